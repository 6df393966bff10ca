#pragma once

#include <string>
#include <utility>
#include <vector>

#include "infotop/lift.hpp"
#include "infotop/measure.hpp"

namespace infotop {

// Named worked examples with frozen expected values. Each check records how
// the expectation was obtained: "closed-form" for values derived by hand,
// "definition" for identities that hold by construction, "recomputed" for
// values frozen from an independent implementation.
struct GoldenCheck {
  std::string name;
  double expected;
  double actual;
  double tol;
  bool is_upper_bound;  // pass means actual <= expected + tol
  std::string origin;
  bool pass;
};

struct FixtureRecord {
  std::string name;
  std::vector<GoldenCheck> checks;
};

// Three-axis joint with a two-point hidden state, an observation at distance
// one on either side of a moving center h_n(b) = b(1 + 1/n), and the center
// itself as third coordinate. n = 0 selects the limit (center at b). Returns
// (mu_n, mu_0).
std::pair<DiscreteMeasure, DiscreteMeasure> fixture_sgn(int n);

struct DiscretePairFixture {
  DiscreteMeasure mu_n, nu_n, mu, nu;
};

// Two consistent pairs on a shared two-point observation axis {0, 1/n} whose
// limits merge the observation points; the joined measures jump from
// perfectly correlated to independent in the limit.
DiscretePairFixture fixture_discrete_pair(int n);

// X is the dyadic grid of 2^K uniform points in [0,1); mu_n pairs each grid
// point with a deterministic label from the n-th alternating dyadic pattern,
// mu with a fair coin. Requires n <= K so the pattern is exact on the grid.
std::pair<DiscreteMeasure, DiscreteMeasure> fixture_rademacher(int n, int K);

struct HellwigFixture {
  DiscreteMeasure nu;  // over A x B
  DiscreteMeasure mu;  // over A x C
  LiftedMeasure glued; // phi1 of (psi(nu), mu)
  double lhs;          // product of marginal masses, rescaled
  double rhs;          // glued mass of the corresponding rectangle
};

// Two-point instance where the glued lifted measure assigns a rectangle
// less mass than the product formula suggests: lhs = 1/4, rhs = 0.
HellwigFixture fixture_hellwig();

// Split atom walking in from 2 + 1/n against a resting mixed atom at 2; X is
// the finite prefix {2} plus {2 + 1/k : k <= cap} of the real line. Returns
// (nu_n, nu).
std::pair<DiscreteMeasure, DiscreteMeasure> fixture_jordan(int n, int cap = 128);

// Replay the named fixture's golden battery. Names: sgn, discrete-pair,
// rademacher, hellwig, jordan.
FixtureRecord verify_fixture(const std::string& name);

}  // namespace infotop
