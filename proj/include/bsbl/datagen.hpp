#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "bsbl/model.hpp"

namespace bsbl {

struct BlockPattern {
  int num_blocks = 0;
  int block_len = 0;
};
struct HybridPattern {
  int num_blocks = 0;
  int block_len = 0;
  int num_isolated = 0;
};
struct RandomPattern {
  int num_nonzero = 0;
};

using SparsityPattern = std::variant<BlockPattern, HybridPattern, RandomPattern>;

int pattern_nonzeros(const SparsityPattern& p);
std::string pattern_name(const SparsityPattern& p);

struct ScenarioSpec {
  int n = 0;
  int l = 0;
  int m = 0;
  SparsityPattern pattern;
  double snr_db = 0.0;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError on infeasible specs
};

// One generated trial instance: the inference inputs plus the ground truth
// used for scoring. gamma_true holds the prior variances of the nonzero rows
// (unit, matching the CN(0,1) amplitude law).
struct Dataset {
  Problem problem;
  CMatrix x_true;                  // N x M
  std::vector<int> support_true;   // ascending, 0-based
  std::vector<double> gamma_true;  // over support_true
};

// Entries drawn uniformly from {(+-1 +- 1j)/sqrt(2)}, then every column is
// scaled to unit Euclidean norm.
CMatrix gen_matrix(int l, int n, std::uint64_t seed);

// Support placed by the pattern; nonzero entries i.i.d. CN(0,1) with the same
// support in every column. Block placements are uniform over all feasible
// layouts with at least one zero between blocks, so maximal runs stay exactly
// block_len long.
std::pair<CMatrix, std::vector<int>> gen_signal(int n, int m,
                                                const SparsityPattern& pattern,
                                                std::uint64_t seed);

// sigma2 = ||A X||_F^2 / (L M 10^(snr/10)); noise i.i.d. CN(0, sigma2).
std::pair<CMatrix, double> add_noise(const CMatrix& a, const CMatrix& x_true,
                                     double snr_db, std::uint64_t seed);

Dataset make_dataset(const ScenarioSpec& spec);

// Text fixture format: a dimension header followed by one CSV row per matrix
// row, complex entries flattened as re,im pairs. Round-trips bit-exactly.
void save_dataset(const Dataset& d, std::ostream& out);
Dataset load_dataset(std::istream& in);
std::string dataset_checksum(const Dataset& d);  // FNV-1a over the text form

}  // namespace bsbl
