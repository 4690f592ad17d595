#include "freeprob/young.hpp"

#include "freeprob/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace freeprob::young {

namespace {

std::vector<int> parse_ints(std::string_view text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw DomainError("not an integer: " + item);
    }
    if (used != item.size()) {
      throw DomainError("not an integer: " + item);
    }
    out.push_back(v);
  }
  return out;
}

// Integer partitions of n with parts <= max_part, descending.
void partitions_rec(int n, int max_part, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions_rec(n - part, part, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<int>> integer_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  partitions_rec(n, n, current, out);
  return out;
}

// z_mu = prod_j j^{k_j} k_j!, the centralizer order.
BigInt centralizer_order(const std::vector<int>& cycles) {
  std::map<int, int> counts;
  for (int c : cycles) {
    ++counts[c];
  }
  BigInt z = 1;
  for (auto [length, count] : counts) {
    for (int i = 0; i < count; ++i) {
      z *= length;
    }
    z *= factorial(static_cast<unsigned>(count));
  }
  return z;
}

// Murnaghan-Nakayama on beta-sets with a fixed number of beads. Removing a
// rim hook of length r moves a bead from b to b - r; the sign is the parity of
// the beads jumped over.
class MnEvaluator {
public:
  explicit MnEvaluator(std::vector<int> cycles) : cycles_(std::move(cycles)) {
    std::sort(cycles_.begin(), cycles_.end(), std::greater<>());
    while (!cycles_.empty() && cycles_.back() == 1) {
      cycles_.pop_back();
    }
  }

  BigInt evaluate(const YoungDiagram& d) {
    const int len = d.row_count();
    std::vector<int> beta(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
      beta[static_cast<std::size_t>(i)] = d.rows()[static_cast<std::size_t>(i)] + (len - 1 - i);
    }
    std::sort(beta.begin(), beta.end());
    return recurse(beta, 0);
  }

private:
  BigInt recurse(const std::vector<int>& beta, std::size_t idx) {
    if (idx == cycles_.size()) {
      return dimension(from_beta(beta));
    }
    auto key = std::make_pair(beta, idx);
    if (auto it = memo_.find(key); it != memo_.end()) {
      return it->second;
    }
    const int r = cycles_[idx];
    BigInt total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      const int target = beta[i] - r;
      if (target < 0 || std::binary_search(beta.begin(), beta.end(), target)) {
        continue;
      }
      int jumped = 0;
      for (int b : beta) {
        if (b > target && b < beta[i]) {
          ++jumped;
        }
      }
      std::vector<int> next = beta;
      next[i] = target;
      std::sort(next.begin(), next.end());
      BigInt sub = recurse(next, idx + 1);
      if (jumped % 2 == 0) {
        total += sub;
      } else {
        total -= sub;
      }
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

  static YoungDiagram from_beta(const std::vector<int>& beta) {
    std::vector<int> rows;
    const int len = static_cast<int>(beta.size());
    for (int i = 0; i < len; ++i) {
      // beta sorted ascending; the largest bead is the first row.
      const int row = beta[static_cast<std::size_t>(len - 1 - i)] - (len - 1 - i);
      if (row > 0) {
        rows.push_back(row);
      }
    }
    return YoungDiagram(std::move(rows));
  }

  std::vector<int> cycles_;
  std::map<std::pair<std::vector<int>, std::size_t>, BigInt> memo_;
};

void check_character_size(int n) {
  if (n > kCharacterCap) {
    throw SizeLimitError("character oracle: n=" + std::to_string(n) + " exceeds cap " +
                         std::to_string(kCharacterCap));
  }
}

} // namespace

// ---------------------------------------------------------------------------
// YoungDiagram

YoungDiagram::YoungDiagram(std::vector<int> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] < 1) {
      throw DomainError("YoungDiagram: rows must be positive");
    }
    if (i > 0 && rows_[i] > rows_[i - 1]) {
      throw DomainError("YoungDiagram: rows must be weakly decreasing");
    }
    n_ += rows_[i];
  }
}

YoungDiagram YoungDiagram::parse(std::string_view text) {
  if (text.empty()) {
    return YoungDiagram();
  }
  return YoungDiagram(parse_ints(text));
}

YoungDiagram YoungDiagram::square(int side) {
  if (side < 0) {
    throw DomainError("square: side must be >= 0");
  }
  return YoungDiagram(std::vector<int>(static_cast<std::size_t>(side), side));
}

YoungDiagram YoungDiagram::staircase(int k) {
  std::vector<int> rows;
  for (int r = k; r >= 1; --r) {
    rows.push_back(r);
  }
  return YoungDiagram(std::move(rows));
}

YoungDiagram YoungDiagram::conjugate() const {
  std::vector<int> cols;
  for (int j = 0; j < longest_row(); ++j) {
    int height = 0;
    while (height < row_count() && rows_[static_cast<std::size_t>(height)] > j) {
      ++height;
    }
    cols.push_back(height);
  }
  return YoungDiagram(std::move(cols));
}

YoungDiagram YoungDiagram::dilate(int factor) const {
  if (factor < 1) {
    throw DomainError("dilate: factor must be >= 1");
  }
  std::vector<int> rows;
  for (int r : rows_) {
    for (int i = 0; i < factor; ++i) {
      rows.push_back(r * factor);
    }
  }
  return YoungDiagram(std::move(rows));
}

std::string YoungDiagram::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i != 0) {
      out << ',';
    }
    out << rows_[i];
  }
  return out.str();
}

std::vector<YoungDiagram> diagrams_of_size(int n) {
  if (n < 0) {
    throw DomainError("diagrams_of_size: n must be >= 0");
  }
  std::vector<YoungDiagram> out;
  for (auto& parts : integer_partitions(n)) {
    out.emplace_back(std::move(parts));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interlacing coordinates

InterlacingCoords::InterlacingCoords(std::vector<int> minima, std::vector<int> maxima)
    : minima_(std::move(minima)), maxima_(std::move(maxima)) {
  if (minima_.empty() || maxima_.size() + 1 != minima_.size()) {
    throw DomainError("InterlacingCoords: need k minima and k-1 maxima");
  }
  long long balance = 0;
  for (std::size_t i = 0; i < minima_.size(); ++i) {
    balance += minima_[i];
    if (i < maxima_.size()) {
      balance -= maxima_[i];
      if (!(minima_[i] < maxima_[i] && maxima_[i] < minima_[i + 1])) {
        throw DomainError("InterlacingCoords: sequences do not strictly interlace");
      }
    }
  }
  if (balance != 0) {
    throw DomainError("InterlacingCoords: sum of minima must equal sum of maxima");
  }
}

InterlacingCoords InterlacingCoords::scaled(int factor) const {
  if (factor < 1) {
    throw DomainError("scaled: factor must be >= 1");
  }
  auto scale = [factor](std::vector<int> v) {
    for (int& x : v) {
      x *= factor;
    }
    return v;
  };
  return InterlacingCoords(scale(minima_), scale(maxima_));
}

InterlacingCoords diagram_to_interlacing(const YoungDiagram& d) {
  const auto& rows = d.rows();
  const int len = d.row_count();
  std::vector<int> minima;
  std::vector<int> maxima;
  for (int i = 0; i < len; ++i) {
    const int r = rows[static_cast<std::size_t>(i)];
    if (i == 0 || r < rows[static_cast<std::size_t>(i - 1)]) {
      minima.push_back(i - r);  // addable cell (i, r)
    }
    if (i == len - 1 || rows[static_cast<std::size_t>(i + 1)] < r) {
      maxima.push_back(i - (r - 1));  // removable cell (i, r - 1)
    }
  }
  minima.push_back(len);  // addable cell (len, 0)
  std::sort(minima.begin(), minima.end());
  std::sort(maxima.begin(), maxima.end());
  return InterlacingCoords(std::move(minima), std::move(maxima));
}

YoungDiagram interlacing_to_diagram(const InterlacingCoords& c) {
  // Walk the profile from the far left using contents of the conjugate
  // orientation (negate and reverse): rising runs add columns, falling runs
  // close rows from the bottom.
  std::vector<int> x;
  std::vector<int> y;
  for (auto it = c.minima().rbegin(); it != c.minima().rend(); ++it) {
    x.push_back(-*it);
  }
  for (auto it = c.maxima().rbegin(); it != c.maxima().rend(); ++it) {
    y.push_back(-*it);
  }
  const int row_total = -x.front();
  if (row_total < 0) {
    throw DomainError("interlacing_to_diagram: coordinates are not a diagram profile");
  }
  std::vector<int> rows(static_cast<std::size_t>(row_total), 0);
  int row = row_total;
  int col = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    col += y[i] - x[i];
    for (int step = 0; step < x[i + 1] - y[i]; ++step) {
      --row;
      if (row < 0) {
        throw DomainError("interlacing_to_diagram: coordinates are not a diagram profile");
      }
      rows[static_cast<std::size_t>(row)] = col;
    }
  }
  if (row != 0 || col != x.back()) {
    throw DomainError("interlacing_to_diagram: coordinates are not a diagram profile");
  }
  return YoungDiagram(std::move(rows));
}

// ---------------------------------------------------------------------------
// Transition measure

DiscreteMeasure transition_measure(const InterlacingCoords& c) {
  const auto& x = c.minima();
  const auto& y = c.maxima();
  std::vector<Atom<Rational>> atoms;
  for (std::size_t i = 0; i < x.size(); ++i) {
    BigInt num = 1;
    BigInt den = 1;
    for (int yj : y) {
      num *= x[i] - yj;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j != i) {
        den *= x[i] - x[j];
      }
    }
    if (den == 0) {
      throw DomainError("transition_measure: repeated minima");
    }
    atoms.push_back({Rational(x[i]), Rational(num, den)});
  }
  return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure transition_measure(const YoungDiagram& d) { return transition_measure(diagram_to_interlacing(d)); }

CumulantSequence diagram_free_cumulants(const YoungDiagram& d, int k_max) {
  if (k_max < 1) {
    throw DomainError("diagram_free_cumulants: k_max must be >= 1");
  }
  return free_cumulants_from_moments(moments_of(transition_measure(d), k_max));
}

// ---------------------------------------------------------------------------
// Cycle types and characters

CycleType::CycleType(std::map<int, int> counts) {
  for (auto [length, count] : counts) {
    if (length < 2) {
      throw DomainError("CycleType: cycle lengths must be >= 2");
    }
    if (count < 0) {
      throw DomainError("CycleType: counts must be >= 0");
    }
    if (count > 0) {
      counts_.emplace(length, count);
    }
  }
}

CycleType CycleType::parse(std::string_view text) {
  std::map<int, int> counts;
  if (text.empty()) {
    return CycleType();
  }
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw DomainError("cycle spec entries must be length:count, got " + item);
    }
    auto parsed = parse_ints(item.substr(0, colon) + "," + item.substr(colon + 1));
    counts[parsed[0]] += parsed[1];
  }
  return CycleType(std::move(counts));
}

CycleType CycleType::single_cycle(int length) { return CycleType(std::map<int, int>{{length, 1}}); }

int CycleType::support() const noexcept {
  int s = 0;
  for (auto [length, count] : counts_) {
    s += length * count;
  }
  return s;
}

int CycleType::cayley_norm() const noexcept {
  int s = 0;
  for (auto [length, count] : counts_) {
    s += (length - 1) * count;
  }
  return s;
}

CycleType CycleType::operator+(const CycleType& other) const {
  auto counts = counts_;
  for (auto [length, count] : other.counts_) {
    counts[length] += count;
  }
  return CycleType(std::move(counts));
}

std::vector<int> CycleType::cycle_lengths(int n) const {
  if (support() > n) {
    throw DomainError("cycle type moves " + std::to_string(support()) + " points, more than n=" + std::to_string(n));
  }
  std::vector<int> out;
  for (auto it = counts_.rbegin(); it != counts_.rend(); ++it) {
    out.insert(out.end(), static_cast<std::size_t>(it->second), it->first);
  }
  out.insert(out.end(), static_cast<std::size_t>(n - support()), 1);
  return out;
}

std::string CycleType::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (auto [length, count] : counts_) {
    if (!first) {
      out << ',';
    }
    out << length << ':' << count;
    first = false;
  }
  return out.str();
}

CharacterEstimate character_estimate(const YoungDiagram& d, const CycleType& ct) {
  const int n = d.box_count();
  if (ct.support() > n) {
    throw DomainError("character_estimate: class larger than n");
  }
  CharacterEstimate est{Rational(1), -1.0 - ct.cayley_norm() / 2.0};
  if (ct.counts().empty()) {
    return est;
  }
  const int longest = ct.counts().rbegin()->first;
  const auto r = diagram_free_cumulants(d, longest + 1);
  for (auto [j, count] : ct.counts()) {
    const Rational factor = r.cumulant(j + 1) / pow(Rational(n), j);
    est.value *= pow(factor, count);
  }
  return est;
}

BigInt dimension(const YoungDiagram& d) {
  const auto conj = d.conjugate();
  BigInt hooks = 1;
  for (int i = 0; i < d.row_count(); ++i) {
    for (int j = 0; j < d.rows()[static_cast<std::size_t>(i)]; ++j) {
      const int arm = d.rows()[static_cast<std::size_t>(i)] - j - 1;
      const int leg = conj.rows()[static_cast<std::size_t>(j)] - i - 1;
      hooks *= arm + leg + 1;
    }
  }
  return factorial(static_cast<unsigned>(d.box_count())) / hooks;
}

BigInt character_value(const YoungDiagram& d, std::vector<int> cycle_lengths) {
  check_character_size(d.box_count());
  int total = 0;
  for (int c : cycle_lengths) {
    if (c < 1) {
      throw DomainError("character_value: cycle lengths must be positive");
    }
    total += c;
  }
  if (total != d.box_count()) {
    throw DomainError("character_value: cycle lengths must sum to the box count");
  }
  return MnEvaluator(std::move(cycle_lengths)).evaluate(d);
}

Rational mn_character(const YoungDiagram& d, const CycleType& ct) {
  const int n = d.box_count();
  check_character_size(n);
  const auto lengths = ct.cycle_lengths(n);
  return Rational(character_value(d, lengths), dimension(d));
}

bool balanced_check(const YoungDiagram& d, double a) {
  if (!(a > 0.0)) {
    throw DomainError("balanced_check: A must be positive");
  }
  const double bound = a * std::sqrt(static_cast<double>(d.box_count()));
  return d.longest_row() <= bound && d.row_count() <= bound;
}

FactorizationDefect factorization_defect(const YoungDiagram& d, const CycleType& ct1, const CycleType& ct2) {
  const int n = d.box_count();
  if (ct1.support() + ct2.support() > n) {
    throw DomainError("factorization_defect: classes do not fit disjointly in n");
  }
  const CycleType product = ct1 + ct2;
  const Rational joint = mn_character(d, product);
  const Rational split = mn_character(d, ct1) * mn_character(d, ct2);
  return {abs(Rational(joint - split)), std::pow(static_cast<double>(n), -1.0 - product.cayley_norm() / 2.0)};
}

// ---------------------------------------------------------------------------
// Induction

MomentSequence induce_shape_prediction(const YoungDiagram& d1, const YoungDiagram& d2, int order) {
  return free_convolve(moments_of(transition_measure(d1), order), moments_of(transition_measure(d2), order), order);
}

std::vector<InducedComponent> induced_decomposition_oracle(const YoungDiagram& d1, const YoungDiagram& d2) {
  const int n1 = d1.box_count();
  const int n2 = d2.box_count();
  const int n = n1 + n2;
  if (n > kInductionCap) {
    throw SizeLimitError("induced_decomposition_oracle: n1+n2=" + std::to_string(n) + " exceeds cap " +
                         std::to_string(kInductionCap));
  }
  if (n == 0) {
    return {{YoungDiagram(), BigInt(1)}};
  }
  // Frobenius reciprocity: <Ind(chi1 x chi2), chi_nu> is the Young-subgroup
  // inner product of chi_nu restricted with chi1 x chi2.
  struct ClassTerm {
    std::vector<int> cycles;
    Rational weight;
  };
  std::vector<ClassTerm> terms;
  for (const auto& mu1 : integer_partitions(n1)) {
    const Rational w1(character_value(d1, mu1), centralizer_order(mu1));
    if (w1 == 0) {
      continue;
    }
    for (const auto& mu2 : integer_partitions(n2)) {
      const Rational w2(character_value(d2, mu2), centralizer_order(mu2));
      if (w2 == 0) {
        continue;
      }
      std::vector<int> joined = mu1;
      joined.insert(joined.end(), mu2.begin(), mu2.end());
      terms.push_back({std::move(joined), w1 * w2});
    }
  }
  std::vector<InducedComponent> out;
  for (const auto& nu : diagrams_of_size(n)) {
    Rational mult = 0;
    for (const auto& term : terms) {
      mult += term.weight * Rational(character_value(nu, term.cycles));
    }
    if (denominator(mult) != 1 || mult < 0) {
      throw NumericError("induced_decomposition_oracle: non-integral multiplicity for " + nu.to_string());
    }
    if (mult != 0) {
      out.push_back({nu, numerator(mult)});
    }
  }
  return out;
}

MomentSequence induced_mean_moments(const YoungDiagram& d1, const YoungDiagram& d2, int order) {
  std::vector<Rational> sum(static_cast<std::size_t>(order), Rational(0));
  Rational total_weight = 0;
  for (const auto& comp : induced_decomposition_oracle(d1, d2)) {
    const Rational weight(comp.multiplicity * dimension(comp.shape));
    const auto m = moments_of(transition_measure(comp.shape), order);
    for (int k = 1; k <= order; ++k) {
      sum[static_cast<std::size_t>(k - 1)] += weight * m.moment(k);
    }
    total_weight += weight;
  }
  for (auto& v : sum) {
    v /= total_weight;
  }
  return MomentSequence(std::move(sum));
}

} // namespace freeprob::young
