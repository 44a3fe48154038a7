#include "chosim/events.hpp"

#include <stdexcept>

namespace chosim {

const char* to_string(EventType t) {
    switch (t) {
        case EventType::Prep: return "PREP";
        case EventType::Release: return "RELEASE";
        case EventType::Mr: return "MR";
        case EventType::UpdateCommit: return "UPDATE_COMMIT";
        case EventType::Exec: return "EXEC";
        case EventType::Cfra: return "CFRA";
        case EventType::Cbra: return "CBRA";
        case EventType::Hof: return "HOF";
        case EventType::Pp: return "PP";
    }
    return "?";
}

EventType event_type_from_string(const std::string& s) {
    if (s == "PREP") return EventType::Prep;
    if (s == "RELEASE") return EventType::Release;
    if (s == "MR") return EventType::Mr;
    if (s == "UPDATE_COMMIT") return EventType::UpdateCommit;
    if (s == "EXEC") return EventType::Exec;
    if (s == "CFRA") return EventType::Cfra;
    if (s == "CBRA") return EventType::Cbra;
    if (s == "HOF") return EventType::Hof;
    if (s == "PP") return EventType::Pp;
    throw std::invalid_argument("unknown event type: " + s);
}

void write_event_csv(const EventLog& log, std::ostream& os) {
    os << "time_ms,ue,event,cell,beam\n";
    for (const Event& e : log) {
        os << e.time_ms << ',' << e.ue << ',' << to_string(e.type) << ',' << e.cell << ','
           << e.beam << '\n';
    }
}

}  // namespace chosim
