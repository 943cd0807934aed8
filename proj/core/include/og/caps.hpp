#ifndef OG_CAPS_HPP
#define OG_CAPS_HPP

#include <cstdlib>
#include <string>

namespace og {

// Size caps for the exact (exhaustive) computations, gathered in one place.
// Defaults keep every single computation under a few seconds at desk scale.
// ORACLE_GAMES_CAP_OVERRIDE=<n> raises any cap below n for users who accept
// long runtimes; individual CLI flags override further.
struct Caps {
  int vc_max_domain = 24;            // exhaustive shattered-subset search
  int threshold_max_side = 16;       // exact ordered-pattern DFS, rows and cols
  int fat_max_domain = 12;           // fat-shattering column-subset search
  int sfat_depth_cap = 4;            // sequential-fat saturating depth
  int littlestone_max_restrictions = 1 << 14;  // memoised recursion budget
  int agnostic_horizon_cap = 16;     // T in the experts reduction
  int agnostic_flip_cap = 3;         // M in the experts reduction
  long solver_iteration_cap = 10000; // double-oracle outer loops

  static Caps from_env() {
    Caps c;
    if (const char* s = std::getenv("ORACLE_GAMES_CAP_OVERRIDE")) {
      long v = std::strtol(s, nullptr, 10);
      if (v > 0) c.raise_to(v);
    }
    return c;
  }

  void raise_to(long v) {
    auto up = [v](auto& cap) {
      if (static_cast<long>(cap) < v) cap = static_cast<decltype(cap + 0)>(v);
    };
    up(vc_max_domain);
    up(threshold_max_side);
    up(fat_max_domain);
    up(sfat_depth_cap);
    up(littlestone_max_restrictions);
    up(agnostic_horizon_cap);
    up(agnostic_flip_cap);
    up(solver_iteration_cap);
  }
};

}  // namespace og

#endif  // OG_CAPS_HPP
