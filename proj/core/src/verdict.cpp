#include "klorentz/verdict.hpp"

namespace klorentz {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

}  // namespace klorentz
