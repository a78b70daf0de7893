#include "bsbl/metrics.hpp"

#include <algorithm>

#include "bsbl/errors.hpp"
#include "bsbl/kernels.hpp"

namespace bsbl {

double nmse(const CMatrix& x_true, const CMatrix& x_hat) {
  if (x_true.rows() != x_hat.rows() || x_true.cols() != x_hat.cols())
    throw ConfigError("nmse: shapes disagree");
  const double denom = kernels::sumsq(x_true.data(), x_true.size());
  if (denom <= 0.0) throw ConfigError("nmse: X_true is zero");
  return kernels::diff_sumsq(x_true.data(), x_hat.data(), x_true.size()) /
         denom;
}

TrialScores precision_recall_f1(const std::vector<int>& support_true,
                                const std::vector<int>& support_est) {
  if (support_true.empty())
    throw ConfigError("scores: true support is empty");
  std::vector<int> st = support_true, se = support_est;
  std::sort(st.begin(), st.end());
  std::sort(se.begin(), se.end());
  std::vector<int> hit;
  std::set_intersection(st.begin(), st.end(), se.begin(), se.end(),
                        std::back_inserter(hit));
  TrialScores sc;
  sc.support_size_est = se.size();
  const double inter = static_cast<double>(hit.size());
  sc.precision = se.empty() ? 0.0 : inter / static_cast<double>(se.size());
  sc.recall = inter / static_cast<double>(st.size());
  const double pr = sc.precision + sc.recall;
  sc.f1_standard = pr > 0.0 ? 2.0 * sc.precision * sc.recall / pr : 0.0;
  sc.f1_paper = pr > 0.0 ? sc.precision * sc.recall / pr : 0.0;
  return sc;
}

}  // namespace bsbl
