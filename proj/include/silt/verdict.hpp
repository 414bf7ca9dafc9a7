#pragma once

#include <string>
#include <utility>
#include <vector>

namespace silt {

enum class Outcome { Holds, Fails, Inconclusive };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Holds: return "holds";
        case Outcome::Fails: return "fails";
        default: return "inconclusive";
    }
}

/* Outcome of a decision procedure. Holds/Fails carry a re-checkable
 * certificate description; Inconclusive carries the exhausted bound.
 */
struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    std::string witness;     // human-readable certificate / bound note
    std::string provenance;  // which route(s) produced it

    bool holds() const { return outcome == Outcome::Holds; }
    bool fails() const { return outcome == Outcome::Fails; }

    static Verdict yes(std::string why, std::string route = "") {
        return Verdict{Outcome::Holds, std::move(why), std::move(route)};
    }
    static Verdict no(std::string why, std::string route = "") {
        return Verdict{Outcome::Fails, std::move(why), std::move(route)};
    }
    static Verdict unknown(std::string why, std::string route = "") {
        return Verdict{Outcome::Inconclusive, std::move(why), std::move(route)};
    }
};

}  // namespace silt
