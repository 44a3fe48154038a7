#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace chosim {

enum class EventType { Prep, Release, Mr, UpdateCommit, Exec, Cfra, Cbra, Hof, Pp };

const char* to_string(EventType t);
EventType event_type_from_string(const std::string& s);

/// Ground truth for all KPI counters; every counter must be recomputable from
/// the log alone.
struct Event {
    std::int64_t time_ms = 0;
    int ue = -1;
    EventType type = EventType::Prep;
    int cell = -1;
    int beam = -1;
};

using EventLog = std::vector<Event>;

void write_event_csv(const EventLog& log, std::ostream& os);

}  // namespace chosim
