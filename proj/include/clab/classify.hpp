#pragma once

#include "clab/operator_symbol.hpp"
#include "clab/subspace.hpp"

namespace clab {

/// Sampled ellipticity verdict. Not a proof: `elliptic` means the smallest
/// singular value of A(xi) stayed above tol * symbol_scale on every sampled
/// and descent-refined unit frequency.
struct EllipticityVerdict {
  bool elliptic = false;
  Eigen::VectorXd worst_xi;  // witness when not elliptic
  double min_singular_value = 0.0;
  double symbol_scale = 0.0;  // max top singular value seen on the sphere
  int samples = 0;
  int refine_steps = 0;
};

EllipticityVerdict is_elliptic(const OperatorSymbol& a, int samples = 512, double tol = 1e-7);

/// span{ A(xi) v : xi in W, v in V } as a subspace of E.
Subspace span_image(const OperatorSymbol& a, const Subspace& w);

/// Sampled l-cancellation verdict. `canceling` with the witness subspaces
/// whose image spans intersect to {0}; otherwise the residual subspace the
/// intersection stalled at (a heuristic non-canceling indication).
struct CancelingVerdict {
  bool canceling = false;
  int l = 0;
  std::vector<Subspace> witnesses;
  Subspace residual;
  int rounds_used = 0;
  bool stalled = false;

  CancelingVerdict() : residual(Subspace::zero(1)) {}
};

/// Decides l-cancellation by intersecting image spans over seeded random
/// l-dimensional subspaces; stalls after dimE consecutive non-shrinking
/// samples. l = 0 is canceling by convention; l = n checks A = 0 exactly.
/// `initial_subspaces` are consumed before any random sample (witness reuse).
CancelingVerdict is_l_canceling(const OperatorSymbol& a, int l, int max_rounds = 256,
                                std::uint64_t seed = 1,
                                const std::vector<Subspace>& initial_subspaces = {});

}  // namespace clab
