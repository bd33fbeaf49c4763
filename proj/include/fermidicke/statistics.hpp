// statistics.hpp — parent/daughter particle statistics for a decaying two-level site
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fermidicke {

enum class Particle { boson, fermion };

// The three supported decay configurations.  Each lattice site is a two-level
// system |parent> -> |daughter>; the statistics of the two species fix which
// occupations carry Jordan-Wigner strings and whether the emitted quantum is
// itself a fermion (it is exactly when parent and daughter statistics differ).
// A fermion->fermion configuration would emit a boson from a fermionic pair
// and is outside the model, so it is not representable here.
enum class StatisticsConfig {
  boson_to_fermion,   // bosonic parent decays into a fermionic daughter
  fermion_to_boson,   // fermionic parent decays into a bosonic daughter
  boson_to_boson      // photonic reference case, no strings anywhere
};

inline Particle parent_species(StatisticsConfig s) {
  return s == StatisticsConfig::fermion_to_boson ? Particle::fermion
                                                 : Particle::boson;
}

inline Particle daughter_species(StatisticsConfig s) {
  return s == StatisticsConfig::boson_to_fermion ? Particle::fermion
                                                 : Particle::boson;
}

// The emitted quantum balances the statistics of the transition.
inline Particle emitted_species(StatisticsConfig s) {
  return parent_species(s) != daughter_species(s) ? Particle::fermion
                                                  : Particle::boson;
}

inline bool emits_fermion(StatisticsConfig s) {
  return emitted_species(s) == Particle::fermion;
}

// True when some site occupation is fermionic, i.e. site operators need
// Jordan-Wigner sign strings.
inline bool has_fermionic_sites(StatisticsConfig s) {
  return s != StatisticsConfig::boson_to_boson;
}

inline const char* stats_tag(StatisticsConfig s) {
  switch (s) {
    case StatisticsConfig::boson_to_fermion: return "bf";
    case StatisticsConfig::fermion_to_boson: return "fb";
    case StatisticsConfig::boson_to_boson:   return "bb";
  }
  throw std::logic_error("stats_tag: unreachable");
}

inline StatisticsConfig stats_from_tag(std::string_view tag) {
  if (tag == "bf") return StatisticsConfig::boson_to_fermion;
  if (tag == "fb") return StatisticsConfig::fermion_to_boson;
  if (tag == "bb") return StatisticsConfig::boson_to_boson;
  throw std::invalid_argument("unknown statistics tag '" + std::string(tag) +
                              "' (expected bf, fb or bb)");
}

}  // namespace fermidicke
