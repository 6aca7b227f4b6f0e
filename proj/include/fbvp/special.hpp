#pragma once

namespace fbvp {

/// Gamma function for x > 0 via the Lanczos approximation (g = 7, 9 terms).
/// Relative accuracy is better than 1e-14 on (0, 10].
double gamma_fn(double x);

}  // namespace fbvp
