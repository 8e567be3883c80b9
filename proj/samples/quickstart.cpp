// Builds Gamma1(8), inspects it, and runs a short extremal search at n = 12.

#include <iostream>

#include "signed_spectra/signed_spectra.hpp"

namespace ss = signed_spectra;

int main() {
  const ss::SignedGraph g = ss::gamma1(8);
  std::cout << "gamma1(8): " << ss::to_line(g) << "\n";

  const ss::SpectralResult spec = ss::index(g);
  std::cout << "lambda1 = " << ss::format_real(spec.lambda1) << ", margin over n-3 = "
            << ss::format_real(spec.lambda1 - 5) << ", residual = " << spec.residual << "\n";
  std::cout << "frustration = " << ss::frustration_index(g).epsilon
            << ", negative girth = " << ss::negative_girth(g)->length() << "\n";
  std::cout << "hong = " << ss::format_real(ss::hong_bound(g)) << ", stanic = " << ss::format_real(ss::stanic_bound(g))
            << "\n";

  // Switching never changes the spectrum or the balanced-cycle list.
  const ss::SignedGraph h = ss::switch_at(g, ss::SwitchSet{0, 3, 5});
  std::cout << "switched copy equivalent: " << std::boolalpha << ss::is_switching_equivalent(g, h).equivalent
            << ", lambda1 = " << ss::format_real(ss::largest_eigenvalue(h)) << "\n";

  ss::LocalSearchOptions opt;
  opt.seed = 7;
  opt.iterations = 5000;
  opt.restarts = 4;
  opt.threads = ss::resolve_threads();
  const ss::ExtremalReport report = ss::local_search(12, 5, opt);
  std::cout << "search n=12 r=5: verdict " << ss::to_string(report.verdict) << ", best "
            << ss::format_real(report.max_lambda1) << " vs gamma1 " << ss::format_real(report.gamma1_lambda1) << "\n";
  return 0;
}
