#include "bsbl/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bsbl/errors.hpp"
#include "bsbl/kernels.hpp"
#include "bsbl/rng.hpp"

namespace bsbl {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::vector<int> sample_distinct(int universe, int count, SplitMix64& rng) {
  std::vector<int> idx(static_cast<std::size_t>(universe));
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < count; ++i) {
    const auto j = i + static_cast<int>(rng.next_below(
                           static_cast<std::uint64_t>(universe - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(count));
  std::sort(idx.begin(), idx.end());
  return idx;
}

// Uniform over all placements of num_blocks runs of block_len with at least
// one zero between consecutive runs (so each run stays maximal). Bijection:
// sorted distinct offsets x_i in {0..n-nb*bl} map to starts x_i + i*bl.
std::vector<int> place_blocks(int n, int num_blocks, int block_len,
                              SplitMix64& rng) {
  const int slots = n - num_blocks * block_len + 1;
  std::vector<int> starts = sample_distinct(slots, num_blocks, rng);
  for (int i = 0; i < num_blocks; ++i)
    starts[static_cast<std::size_t>(i)] += i * block_len;
  return starts;
}

void blocks_feasible_or_throw(int n, int nb, int bl) {
  if (nb < 1 || bl < 1)
    throw ConfigError("pattern: block counts must be >= 1");
  if (nb * bl + (nb - 1) > n)
    throw ConfigError("pattern: " + std::to_string(nb) + " blocks of length " +
                      std::to_string(bl) + " do not fit in N=" +
                      std::to_string(n) + " with separating zeros");
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& out, const CMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const cplx* row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << fmt17(row[c].real()) << ',' << fmt17(row[c].imag());
    }
    out << '\n';
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(',', pos);
    if (next == std::string::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

std::string next_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("dataset: unexpected end of file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw IoError("dataset: malformed number \"" + s + "\"");
  return v;
}

CMatrix read_matrix(std::istream& in, std::size_t rows, std::size_t cols,
                    const std::string& tag) {
  if (next_line(in) != tag) throw IoError("dataset: expected section " + tag);
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto fields = split_csv(next_line(in));
    if (fields.size() != 2 * cols)
      throw IoError("dataset: wrong field count in section " + tag);
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = cplx(parse_double(fields[2 * c]), parse_double(fields[2 * c + 1]));
  }
  return m;
}

}  // namespace

int pattern_nonzeros(const SparsityPattern& p) {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BlockPattern>)
          return v.num_blocks * v.block_len;
        else if constexpr (std::is_same_v<T, HybridPattern>)
          return v.num_blocks * v.block_len + v.num_isolated;
        else
          return v.num_nonzero;
      },
      p);
}

std::string pattern_name(const SparsityPattern& p) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BlockPattern>) return "block";
        else if constexpr (std::is_same_v<T, HybridPattern>) return "hybrid";
        else return "random";
      },
      p);
}

void ScenarioSpec::validate() const {
  if (n < 1 || l < 1 || m < 1)
    throw ConfigError("scenario: N, L, M must be >= 1");
  if (!std::isfinite(snr_db)) throw ConfigError("scenario: snr_db must be finite");
  const int nnz = pattern_nonzeros(pattern);
  if (nnz < 1) throw ConfigError("scenario: pattern has no nonzeros");
  if (nnz > n)
    throw ConfigError("scenario: " + std::to_string(nnz) +
                      " nonzeros exceed N=" + std::to_string(n));
  if (const auto* b = std::get_if<BlockPattern>(&pattern))
    blocks_feasible_or_throw(n, b->num_blocks, b->block_len);
  if (const auto* h = std::get_if<HybridPattern>(&pattern)) {
    blocks_feasible_or_throw(n, h->num_blocks, h->block_len);
    if (h->num_isolated < 0)
      throw ConfigError("scenario: num_isolated must be >= 0");
    if (h->num_blocks * h->block_len + h->num_isolated > n)
      throw ConfigError("scenario: isolated entries do not fit outside blocks");
  }
  if (const auto* r = std::get_if<RandomPattern>(&pattern))
    if (r->num_nonzero < 1)
      throw ConfigError("scenario: num_nonzero must be >= 1");
}

CMatrix gen_matrix(int l, int n, std::uint64_t seed) {
  if (l < 1 || n < 1) throw ConfigError("gen_matrix: L, N must be >= 1");
  SplitMix64 rng(seed);
  CMatrix a(static_cast<std::size_t>(l), static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const std::uint64_t u = rng.next_below(4);
      a(r, c) = cplx((u & 1) ? -kInvSqrt2 : kInvSqrt2,
                     (u & 2) ? -kInvSqrt2 : kInvSqrt2);
    }
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double nrm2 = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) nrm2 += std::norm(a(r, c));
    const double inv = 1.0 / std::sqrt(nrm2);
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, c) *= inv;
  }
  return a;
}

std::pair<CMatrix, std::vector<int>> gen_signal(int n, int m,
                                                const SparsityPattern& pattern,
                                                std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<int> support;

  if (const auto* b = std::get_if<BlockPattern>(&pattern)) {
    blocks_feasible_or_throw(n, b->num_blocks, b->block_len);
    for (int start : place_blocks(n, b->num_blocks, b->block_len, rng))
      for (int k = 0; k < b->block_len; ++k) support.push_back(start + k);
  } else if (const auto* h = std::get_if<HybridPattern>(&pattern)) {
    blocks_feasible_or_throw(n, h->num_blocks, h->block_len);
    std::vector<bool> in_block(static_cast<std::size_t>(n), false);
    for (int start : place_blocks(n, h->num_blocks, h->block_len, rng))
      for (int k = 0; k < h->block_len; ++k) {
        support.push_back(start + k);
        in_block[static_cast<std::size_t>(start + k)] = true;
      }
    std::vector<int> complement;
    for (int i = 0; i < n; ++i)
      if (!in_block[static_cast<std::size_t>(i)]) complement.push_back(i);
    if (static_cast<int>(complement.size()) < h->num_isolated)
      throw ConfigError("gen_signal: not enough room for isolated entries");
    for (int k : sample_distinct(static_cast<int>(complement.size()),
                                 h->num_isolated, rng))
      support.push_back(complement[static_cast<std::size_t>(k)]);
  } else {
    const auto& r = std::get<RandomPattern>(pattern);
    if (r.num_nonzero < 1 || r.num_nonzero > n)
      throw ConfigError("gen_signal: num_nonzero out of range");
    support = sample_distinct(n, r.num_nonzero, rng);
  }

  std::sort(support.begin(), support.end());
  CMatrix x(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
  for (int i : support)
    for (std::size_t c = 0; c < static_cast<std::size_t>(m); ++c)
      x(static_cast<std::size_t>(i), c) = rng.next_cgaussian();
  return {std::move(x), std::move(support)};
}

std::pair<CMatrix, double> add_noise(const CMatrix& a, const CMatrix& x_true,
                                     double snr_db, std::uint64_t seed) {
  const CMatrix ax = matmul(a, x_true);
  const double energy = kernels::sumsq(ax.data(), ax.size());
  if (energy <= 0.0)
    throw ConfigError("add_noise: zero signal, SNR undefined");
  const double lm = static_cast<double>(ax.rows() * ax.cols());
  const double sigma2 = energy / (lm * std::pow(10.0, snr_db / 10.0));
  const double scale = std::sqrt(sigma2);
  SplitMix64 rng(seed);
  CMatrix y = ax;
  for (std::size_t i = 0; i < y.size(); ++i)
    y.data()[i] += scale * rng.next_cgaussian();
  return {std::move(y), sigma2};
}

Dataset make_dataset(const ScenarioSpec& spec) {
  spec.validate();
  Dataset d;
  d.problem.A = gen_matrix(spec.l, spec.n, derive_seed(spec.seed, {1}));
  auto [x, support] = gen_signal(spec.n, spec.m, spec.pattern,
                                 derive_seed(spec.seed, {2}));
  d.x_true = std::move(x);
  d.support_true = std::move(support);
  auto [y, sigma2] = add_noise(d.problem.A, d.x_true, spec.snr_db,
                               derive_seed(spec.seed, {3}));
  d.problem.Y = std::move(y);
  d.problem.sigma2 = sigma2;
  d.gamma_true.assign(d.support_true.size(), 1.0);
  return d;
}

void save_dataset(const Dataset& d, std::ostream& out) {
  out << "bsbl_dataset,v1\n";
  out << "dims," << d.problem.l() << ',' << d.problem.n() << ','
      << d.problem.m() << '\n';
  out << "sigma2," << fmt17(d.problem.sigma2) << '\n';
  out << "support," << d.support_true.size();
  for (int i : d.support_true) out << ',' << i;
  out << '\n';
  out << "gamma_true";
  for (double g : d.gamma_true) out << ',' << fmt17(g);
  out << '\n';
  out << "A\n";
  write_matrix(out, d.problem.A);
  out << "Y\n";
  write_matrix(out, d.problem.Y);
  out << "X_true\n";
  write_matrix(out, d.x_true);
}

Dataset load_dataset(std::istream& in) {
  if (next_line(in) != "bsbl_dataset,v1")
    throw IoError("dataset: bad magic line");
  const auto dims = split_csv(next_line(in));
  if (dims.size() != 4 || dims[0] != "dims")
    throw IoError("dataset: bad dims line");
  const auto l = static_cast<std::size_t>(std::stoul(dims[1]));
  const auto n = static_cast<std::size_t>(std::stoul(dims[2]));
  const auto m = static_cast<std::size_t>(std::stoul(dims[3]));

  const auto sig = split_csv(next_line(in));
  if (sig.size() != 2 || sig[0] != "sigma2")
    throw IoError("dataset: bad sigma2 line");

  Dataset d;
  d.problem.sigma2 = parse_double(sig[1]);

  const auto sup = split_csv(next_line(in));
  if (sup.size() < 2 || sup[0] != "support")
    throw IoError("dataset: bad support line");
  const auto count = static_cast<std::size_t>(std::stoul(sup[1]));
  if (sup.size() != 2 + count) throw IoError("dataset: bad support count");
  for (std::size_t i = 0; i < count; ++i)
    d.support_true.push_back(static_cast<int>(std::stol(sup[2 + i])));

  const auto gt = split_csv(next_line(in));
  if (gt.empty() || gt[0] != "gamma_true" || gt.size() != 1 + count)
    throw IoError("dataset: bad gamma_true line");
  for (std::size_t i = 0; i < count; ++i)
    d.gamma_true.push_back(parse_double(gt[1 + i]));

  d.problem.A = read_matrix(in, l, n, "A");
  d.problem.Y = read_matrix(in, l, m, "Y");
  d.x_true = read_matrix(in, n, m, "X_true");
  return d;
}

std::string dataset_checksum(const Dataset& d) {
  std::ostringstream oss;
  save_dataset(d, oss);
  const std::string text = oss.str();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bsbl
