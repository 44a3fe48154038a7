#include <doctest.h>

#include <random>
#include <stdexcept>

#include "chosim/cho.hpp"

using namespace chosim;

TEST_CASE("preparation condition") {
    CHECK(check_preparation(-80.0, -90.0, 10.0));    // boundary equality
    CHECK(!check_preparation(-80.0, -90.1, 10.0));   // just below
    CHECK(check_preparation(-80.0, -80.0, 0.0));     // o_prep = 0 means equal strength
}

TEST_CASE("prepare_candidate picks the argmax beam") {
    CandidateSet set;
    set.max_size = 3;
    const PrepareResult pr = prepare_candidate(set, 5, 2, -78.0, {}, 3.0, 100);
    CHECK(pr.inserted);
    CHECK(!pr.evicted_cell_id.has_value());
    REQUIRE(set.entries.size() == 1);
    CHECK(set.entries[0].cell_id == 5);
    CHECK(set.entries[0].cfra_beam_id == 2);
    CHECK(set.entries[0].mr_armed);
    CHECK(set.entries[0].prepared_at_ms == 100);

    CHECK_THROWS_AS(prepare_candidate(set, 5, 1, -70.0, {-78.0}, 3.0, 110), std::logic_error);
}

TEST_CASE("replacement hysteresis on a full set") {
    CandidateSet set;
    set.max_size = 1;
    prepare_candidate(set, 3, 0, -85.0, {}, 3.0, 0);

    // 5 dB above the weakest with 3 dB hysteresis: replaced.
    PrepareResult pr = prepare_candidate(set, 4, 1, -80.0, {-85.0}, 3.0, 10);
    CHECK(pr.inserted);
    CHECK(pr.evicted_cell_id == 3);
    REQUIRE(set.entries.size() == 1);
    CHECK(set.entries[0].cell_id == 4);

    // Only 1 dB above: set unchanged.
    pr = prepare_candidate(set, 6, 0, -79.0, {-80.0}, 3.0, 20);
    CHECK(!pr.inserted);
    CHECK(set.entries[0].cell_id == 4);
}

TEST_CASE("MR trigger") {
    CandidateEntry e;
    e.cell_id = 1;
    e.cfra_beam_id = 0;
    e.mr_armed = true;

    // Best other beam 5 dB above, offset 3: triggers with that beam.
    CHECK(check_mr_trigger(e, {-80.0, -75.0, -90.0}, 3.0) == 1);
    // Margin 2 < 3: no trigger.
    CHECK(!check_mr_trigger(e, {-80.0, -78.0, -90.0}, 3.0).has_value());
    // The CFRA beam itself never triggers, even if it is the overall best.
    CHECK(!check_mr_trigger(e, {-60.0, -90.0, -90.0}, 3.0).has_value());

    e.pending_update = CandidateEntry::PendingUpdate{1, 50};
    e.mr_armed = false;
    CHECK(!check_mr_trigger(e, {-80.0, -60.0, -90.0}, 3.0).has_value());
}

TEST_CASE("apply_mr and commit timing") {
    CandidateEntry e;
    e.cell_id = 2;
    e.cfra_beam_id = 0;
    apply_mr(e, 3, 1000, 30);
    REQUIRE(e.pending_update.has_value());
    CHECK(e.pending_update->effective_at_ms == 1030);
    CHECK(e.pending_update->new_beam_id == 3);
    CHECK(!e.mr_armed);

    CandidateSet set;
    set.entries.push_back(e);
    CHECK(commit_pending_updates(set, 1029).empty());           // not yet due
    const auto committed = commit_pending_updates(set, 1030);   // inclusive boundary
    REQUIRE(committed.size() == 1);
    CHECK(committed[0] == 2);
    CHECK(set.entries[0].cfra_beam_id == 3);
    CHECK(set.entries[0].mr_armed);
    CHECK(!set.entries[0].pending_update.has_value());
}

TEST_CASE("two due updates commit together") {
    CandidateSet set;
    CandidateEntry a, b;
    a.cell_id = 1;
    b.cell_id = 2;
    set.entries = {a, b};
    apply_mr(set.entries[0], 4, 0, 30);
    apply_mr(set.entries[1], 5, 10, 30);
    CHECK(commit_pending_updates(set, 40).size() == 2);
}

TEST_CASE("t_update = 0 commits at the same tick") {
    CandidateEntry e;
    e.cell_id = 1;
    apply_mr(e, 2, 500, 0);
    CandidateSet set;
    set.entries.push_back(e);
    CHECK(commit_pending_updates(set, 500).size() == 1);
}

TEST_CASE("execution trigger with TTT") {
    CandidateEntry e;
    SUBCASE("zero TTT boundary") {
        CHECK(check_execution(-90.0, -87.0, 3.0, e, 0, 1000));
        CHECK(!check_execution(-90.0, -88.0, 3.0, e, 0, 1000));
    }
    SUBCASE("condition must hold for the full TTT") {
        CHECK(!check_execution(-90.0, -86.0, 3.0, e, 100, 1000));
        CHECK(!check_execution(-90.0, -86.0, 3.0, e, 100, 1050));  // held 50 of 100 ms
        CHECK(check_execution(-90.0, -86.0, 3.0, e, 100, 1100));
    }
    SUBCASE("TTT resets when the condition lapses") {
        CHECK(!check_execution(-90.0, -86.0, 3.0, e, 100, 1000));
        CHECK(!check_execution(-90.0, -89.0, 3.0, e, 100, 1050));  // lapsed
        CHECK(!check_execution(-90.0, -86.0, 3.0, e, 100, 1100));  // timer restarted
        CHECK(check_execution(-90.0, -86.0, 3.0, e, 100, 1200));
    }
}

TEST_CASE("RA type selection at t_HO") {
    CandidateEntry e;
    e.cell_id = 1;
    e.cfra_beam_id = 0;

    RaSelection sel = select_ra_type(e, {-78.0, -85.0}, -79.0, 1000);
    CHECK(sel.ra_type == RaType::Cfra);
    CHECK(sel.access_beam_id == 0);

    sel = select_ra_type(e, {-80.0, -72.0}, -79.0, 1000);
    CHECK(sel.ra_type == RaType::Cbra);
    CHECK(sel.access_beam_id == 1);  // strongest beam of the target

    // Idempotence at t_HO.
    const RaSelection again = select_ra_type(e, {-80.0, -72.0}, -79.0, 1000);
    CHECK(again.ra_type == sel.ra_type);
    CHECK(again.access_beam_id == sel.access_beam_id);
}

TEST_CASE("update/execution race: in-flight update is discarded unused") {
    // MR at t = 1000, execution at t = 1020, t_update = 30: the new beam would
    // only commit at 1030, so the old CFRA beam is evaluated and the update is
    // never counted.
    CandidateEntry e;
    e.cell_id = 1;
    e.cfra_beam_id = 0;
    apply_mr(e, 1, 1000, 30);

    const RaSelection sel = select_ra_type(e, {-70.0, -60.0}, -75.0, 1020);
    CHECK(sel.ra_type == RaType::Cfra);
    CHECK(sel.access_beam_id == 0);  // old beam, not the pending one
    CHECK(!e.pending_update.has_value());

    CandidateSet set;
    set.entries.push_back(e);
    CHECK(commit_pending_updates(set, 100000).empty());  // nothing left to count
}

TEST_CASE("mr_armed XOR pending_update holds under random op sequences") {
    std::mt19937 gen(123);
    for (int trial = 0; trial < 200; ++trial) {
        CandidateEntry e;
        e.cell_id = 1;
        e.cfra_beam_id = 0;
        std::int64_t now = 0;
        CandidateSet set;
        set.entries.push_back(e);
        for (int step = 0; step < 50; ++step) {
            now += 10;
            CandidateEntry& cur = set.entries[0];
            switch (gen() % 3) {
                case 0: {
                    const auto trig = check_mr_trigger(
                        cur, {-80.0, -80.0 + static_cast<double>(gen() % 20) - 10.0}, 3.0);
                    if (trig.has_value()) apply_mr(cur, *trig, now, 30);
                    break;
                }
                case 1:
                    commit_pending_updates(set, now);
                    break;
                case 2:
                    select_ra_type(cur, {-80.0, -75.0}, -79.0, now);
                    break;
            }
            CHECK(set.entries[0].mr_armed != set.entries[0].pending_update.has_value());
        }
    }
}
