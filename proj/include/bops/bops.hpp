#pragma once

// Umbrella header: bivariate orthogonal polynomial systems over exact
// rational or float scalars — reverse/centrosymmetric matrix structure,
// moment models, monic and orthonormal three-term recurrences, structural
// check reports, and JSON encodings.

#include "eigen.hpp"       // IWYU pragma: export
#include "json_io.hpp"     // IWYU pragma: export
#include "matrix.hpp"      // IWYU pragma: export
#include "moments.hpp"     // IWYU pragma: export
#include "mops.hpp"        // IWYU pragma: export
#include "poly.hpp"        // IWYU pragma: export
#include "quadrature.hpp"  // IWYU pragma: export
#include "report.hpp"      // IWYU pragma: export
#include "scalar.hpp"      // IWYU pragma: export
