#include "chosim/cho.hpp"

#include <algorithm>
#include <stdexcept>

namespace chosim {

const CandidateEntry* CandidateSet::find(int cell_id) const {
    for (const CandidateEntry& e : entries)
        if (e.cell_id == cell_id) return &e;
    return nullptr;
}

CandidateEntry* CandidateSet::find(int cell_id) {
    for (CandidateEntry& e : entries)
        if (e.cell_id == cell_id) return &e;
    return nullptr;
}

void CandidateSet::remove(int cell_id) {
    entries.erase(std::remove_if(entries.begin(), entries.end(),
                                 [&](const CandidateEntry& e) { return e.cell_id == cell_id; }),
                  entries.end());
}

bool check_preparation(double serving_rsrp_dbm, double candidate_rsrp_dbm, double o_prep_db) {
    return candidate_rsrp_dbm >= serving_rsrp_dbm - o_prep_db;
}

PrepareResult prepare_candidate(CandidateSet& set, int cell_id, int best_beam_id,
                                double new_cell_rsrp_dbm,
                                const std::vector<double>& prepared_cell_rsrp_dbm,
                                double replace_hysteresis_db, std::int64_t now_ms) {
    if (set.find(cell_id) != nullptr)
        throw std::logic_error("prepare_candidate: cell already prepared");

    PrepareResult result;
    if (set.full()) {
        std::size_t weakest = 0;
        for (std::size_t i = 1; i < prepared_cell_rsrp_dbm.size(); ++i) {
            if (prepared_cell_rsrp_dbm[i] < prepared_cell_rsrp_dbm[weakest]) weakest = i;
        }
        if (new_cell_rsrp_dbm < prepared_cell_rsrp_dbm[weakest] + replace_hysteresis_db) {
            return result;  // not inserted
        }
        result.evicted_cell_id = set.entries[weakest].cell_id;
        set.entries.erase(set.entries.begin() + static_cast<std::ptrdiff_t>(weakest));
    }

    CandidateEntry entry;
    entry.cell_id = cell_id;
    entry.cfra_beam_id = best_beam_id;
    entry.prepared_at_ms = now_ms;
    entry.mr_armed = true;
    set.entries.push_back(entry);
    result.inserted = true;
    return result;
}

std::optional<int> check_mr_trigger(const CandidateEntry& entry,
                                    const std::vector<double>& beam_rsrp_dbm,
                                    double offset_db) {
    if (!entry.mr_armed || entry.pending_update.has_value()) return std::nullopt;
    const double p_cfra = beam_rsrp_dbm[static_cast<std::size_t>(entry.cfra_beam_id)];
    int best = -1;
    double best_rsrp = -1e300;
    for (std::size_t b = 0; b < beam_rsrp_dbm.size(); ++b) {
        if (static_cast<int>(b) == entry.cfra_beam_id) continue;
        if (beam_rsrp_dbm[b] > best_rsrp) {
            best_rsrp = beam_rsrp_dbm[b];
            best = static_cast<int>(b);
        }
    }
    if (best >= 0 && best_rsrp >= p_cfra + offset_db) return best;
    return std::nullopt;
}

void apply_mr(CandidateEntry& entry, int new_beam_id, std::int64_t now_ms,
              std::int64_t t_update_ms) {
    entry.pending_update = CandidateEntry::PendingUpdate{new_beam_id, now_ms + t_update_ms};
    entry.mr_armed = false;
}

std::vector<int> commit_pending_updates(CandidateSet& set, std::int64_t now_ms) {
    std::vector<int> committed;
    for (CandidateEntry& e : set.entries) {
        if (e.pending_update.has_value() && e.pending_update->effective_at_ms <= now_ms) {
            e.cfra_beam_id = e.pending_update->new_beam_id;
            e.pending_update.reset();
            e.mr_armed = true;
            committed.push_back(e.cell_id);
        }
    }
    return committed;
}

bool check_execution(double serving_rsrp_dbm, double candidate_rsrp_dbm, double o_exec_db,
                     CandidateEntry& entry, std::int64_t ttt_ms, std::int64_t now_ms) {
    const bool entering = candidate_rsrp_dbm >= serving_rsrp_dbm + o_exec_db;
    if (!entering) {
        entry.ttt_entered_ms.reset();
        return false;
    }
    if (!entry.ttt_entered_ms.has_value()) entry.ttt_entered_ms = now_ms;
    return now_ms - *entry.ttt_entered_ms >= ttt_ms;
}

RaSelection select_ra_type(CandidateEntry& entry, const std::vector<double>& beam_rsrp_dbm,
                           double thr_cfra_dbm, std::int64_t t_ho_ms) {
    // Race rule: an update that would commit after t_HO is dropped unused.
    if (entry.pending_update.has_value() && entry.pending_update->effective_at_ms > t_ho_ms) {
        entry.pending_update.reset();
        entry.mr_armed = true;
    }
    RaSelection sel;
    const double p_cfra = beam_rsrp_dbm[static_cast<std::size_t>(entry.cfra_beam_id)];
    if (p_cfra >= thr_cfra_dbm) {
        sel.ra_type = RaType::Cfra;
        sel.access_beam_id = entry.cfra_beam_id;
    } else {
        sel.ra_type = RaType::Cbra;
        int best = 0;
        for (std::size_t b = 1; b < beam_rsrp_dbm.size(); ++b) {
            if (beam_rsrp_dbm[b] > beam_rsrp_dbm[static_cast<std::size_t>(best)])
                best = static_cast<int>(b);
        }
        sel.access_beam_id = best;
    }
    return sel;
}

}  // namespace chosim
