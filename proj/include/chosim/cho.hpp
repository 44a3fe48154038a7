#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace chosim {

enum class RaType { Cfra, Cbra };

/// One prepared CHO candidate cell and its single CFRA-assigned beam.
struct CandidateEntry {
    int cell_id = -1;
    int cfra_beam_id = -1;
    std::int64_t prepared_at_ms = 0;
    struct PendingUpdate {
        int new_beam_id = -1;
        std::int64_t effective_at_ms = 0;
    };
    std::optional<PendingUpdate> pending_update;
    bool mr_armed = true;
    // Execution condition entering time; unset while the condition does not hold.
    std::optional<std::int64_t> ttt_entered_ms;
};

struct CandidateSet {
    std::vector<CandidateEntry> entries;
    int max_size = 3;

    const CandidateEntry* find(int cell_id) const;
    CandidateEntry* find(int cell_id);
    bool full() const { return static_cast<int>(entries.size()) >= max_size; }
    void remove(int cell_id);
};

struct RaAttemptState {
    int target_cell_id = -1;
    int access_beam_id = -1;
    std::int64_t started_at_ms = 0;
    RaType ra_type = RaType::Cbra;
    std::int64_t t304_ms = 0;
    int attempts_made = 0;
};

/// Candidate is close enough to the serving cell to be worth preparing.
bool check_preparation(double serving_rsrp_dbm, double candidate_rsrp_dbm, double o_prep_db);

/// Outcome of trying to insert a new candidate into a (possibly full) set.
struct PrepareResult {
    bool inserted = false;
    std::optional<int> evicted_cell_id;
};

/// Adds the cell with its argmax beam as the CFRA beam. When the set is full
/// the weakest prepared cell (by current cell RSRP) is replaced only if the
/// new cell beats it by `replace_hysteresis_db`.
PrepareResult prepare_candidate(CandidateSet& set, int cell_id, int best_beam_id,
                                double new_cell_rsrp_dbm,
                                const std::vector<double>& prepared_cell_rsrp_dbm,
                                double replace_hysteresis_db, std::int64_t now_ms);

/// Strongest beam of the candidate cell that beats the CFRA beam by at least
/// `offset` (the MR trigger), or nullopt. Only valid while armed and with no
/// update in flight.
std::optional<int> check_mr_trigger(const CandidateEntry& entry,
                                    const std::vector<double>& beam_rsrp_dbm,
                                    double offset_db);

/// Records the in-flight reassignment; the new beam becomes effective after
/// t_update and further MRs for this cell are suppressed until then.
void apply_mr(CandidateEntry& entry, int new_beam_id, std::int64_t now_ms,
              std::int64_t t_update_ms);

/// Commits every due pending update (effective_at <= now). Returns cell ids of
/// committed entries; each one counts toward N_update.
std::vector<int> commit_pending_updates(CandidateSet& set, std::int64_t now_ms);

/// Execution trigger with time-to-trigger bookkeeping: the o_exec condition
/// must have held continuously for ttt_ms.
bool check_execution(double serving_rsrp_dbm, double candidate_rsrp_dbm, double o_exec_db,
                     CandidateEntry& entry, std::int64_t ttt_ms, std::int64_t now_ms);

struct RaSelection {
    RaType ra_type = RaType::Cbra;
    int access_beam_id = -1;
};

/// RA-type decision at execution time. Any pending update still in flight is
/// discarded unused (the update/execution race). CFRA is used iff the assigned
/// beam clears thr_cfra at t_HO; otherwise CBRA on the strongest beam.
RaSelection select_ra_type(CandidateEntry& entry, const std::vector<double>& beam_rsrp_dbm,
                           double thr_cfra_dbm, std::int64_t t_ho_ms);

}  // namespace chosim
