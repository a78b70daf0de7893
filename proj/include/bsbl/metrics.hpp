#pragma once

#include <vector>

#include "bsbl/linalg.hpp"

namespace bsbl {

struct TrialScores {
  double nmse = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1_standard = 0.0;  // 2PR/(P+R)
  double f1_paper = 0.0;     // PR/(P+R), tops out at 0.5
  std::size_t support_size_est = 0;
};

// ||X_true - X_hat||_F^2 / ||X_true||_F^2. X_true must be nonzero.
double nmse(const CMatrix& x_true, const CMatrix& x_hat);

// Both F1 conventions from the same counts. Empty estimate gives zeros;
// empty truth is a configuration error.
TrialScores precision_recall_f1(const std::vector<int>& support_true,
                                const std::vector<int>& support_est);

}  // namespace bsbl
