#include "corrpoly/presets.hpp"

#include "corrpoly/errors.hpp"

namespace corrpoly {
namespace {

Scenario from_labels(std::string name, std::initializer_list<const char*> events,
                     std::initializer_list<const char*> joints) {
  std::vector<EventId> ev;
  for (const char* e : events) ev.push_back(EventId::parse(e));
  std::vector<Monomial> js;
  for (const char* j : joints) js.push_back(Monomial::parse(j));
  return build_scenario(std::move(ev), std::move(js), std::move(name));
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"ch", "ghz26", "two-by-three", "bell-wigner", "ghz-singles-triples"};
}

Scenario preset(std::string_view name) {
  if (name == "ch")
    return from_labels("ch", {"A1", "A2", "B1", "B2"}, {"A1B1", "A1B2", "A2B1", "A2B2"});
  if (name == "ghz26")
    return from_labels("ghz26", {"A1", "A2", "B1", "B2", "C1", "C2"},
                       {"A1B1", "A1C1", "A1B2", "A1C2", "A2B1", "A2C1", "A2B2", "A2C2", "B1C1",
                        "B1C2", "B2C1", "B2C2", "A1B1C1", "A1B1C2", "A1B2C1", "A1B2C2", "A2B1C1",
                        "A2B1C2", "A2B2C1", "A2B2C2"});
  if (name == "two-by-three")
    return from_labels("two-by-three", {"A1", "A2", "A3", "B1", "B2", "B3"},
                       {"A1B1", "A1B2", "A1B3", "A2B1", "A2B2", "A2B3", "A3B1", "A3B2", "A3B3"});
  if (name == "bell-wigner")
    return from_labels("bell-wigner", {"A1", "A2", "A3"}, {"A1A2", "A1A3", "A2A3"});
  if (name == "ghz-singles-triples")
    return from_labels("ghz-singles-triples", {"A1", "A2", "B1", "B2", "C1", "C2"},
                       {"A1B1C1", "A1B1C2", "A1B2C1", "A1B2C2", "A2B1C1", "A2B1C2", "A2B2C1",
                        "A2B2C2"});
  throw Error(Errc::Parse, "unknown preset '" + std::string(name) + "'");
}

}  // namespace corrpoly
