#include "freeprob/nc_core.hpp"

#include "freeprob/error.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace freeprob::nc {

namespace {

void check_ground_set(int n) {
  if (n < 1 || n > kMaxGroundSet) {
    throw DomainError("ground set size must be in [1, 16], got " + std::to_string(n));
  }
}

void check_cap(int n, int cap, const char* what) {
  if (n < 1) {
    throw DomainError(std::string(what) + ": n must be positive");
  }
  if (n > cap) {
    throw SizeLimitError(std::string(what) + ": n=" + std::to_string(n) + " exceeds cap " +
                         std::to_string(cap));
  }
}

std::vector<int> parse_int_list(std::string_view text, char sep) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(sep, pos);
    auto item = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    while (!item.empty() && item.front() == ' ') {
      item.remove_prefix(1);
    }
    while (!item.empty() && item.back() == ' ') {
      item.remove_suffix(1);
    }
    if (item.empty()) {
      throw DomainError("empty entry in list: " + std::string(text));
    }
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(std::string(item), &used);
    } catch (const std::exception&) {
      throw DomainError("not an integer: " + std::string(item));
    }
    if (used != item.size()) {
      throw DomainError("not an integer: " + std::string(item));
    }
    out.push_back(v);
    if (next == std::string_view::npos) {
      break;
    }
    pos = next + 1;
  }
  return out;
}

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.first * 0x9E3779B97F4A7C15ULL ^ p.second);
  }
};

// Restricted growth string recursion. `noncrossing_only` prunes any
// assignment that creates a crossing with the element being placed: joining
// block b whose current maximum is p is illegal iff some element strictly
// between p and i belongs to a block whose minimum is below p.
class RgsWalker {
public:
  RgsWalker(int n, bool noncrossing_only, const std::function<void(const SetPartition&)>& visit)
      : n_(n), noncrossing_(noncrossing_only), visit_(visit), labels_(static_cast<std::size_t>(n)) {}

  void run() {
    labels_[0] = 0;
    block_min_.assign(1, 1);
    block_max_.assign(1, 1);
    place(2);
  }

private:
  void place(int i) {
    if (i > n_) {
      visit_(SetPartition::from_labels(labels_));
      return;
    }
    const int blocks = static_cast<int>(block_min_.size());
    for (int b = 0; b <= blocks; ++b) {
      if (b < blocks && noncrossing_ && crosses(b, i)) {
        continue;
      }
      labels_[static_cast<std::size_t>(i - 1)] = b;
      if (b == blocks) {
        block_min_.push_back(i);
        block_max_.push_back(i);
        place(i + 1);
        block_min_.pop_back();
        block_max_.pop_back();
      } else {
        int saved = block_max_[static_cast<std::size_t>(b)];
        block_max_[static_cast<std::size_t>(b)] = i;
        place(i + 1);
        block_max_[static_cast<std::size_t>(b)] = saved;
      }
    }
  }

  bool crosses(int b, int i) const {
    const int p = block_max_[static_cast<std::size_t>(b)];
    for (int j = p + 1; j < i; ++j) {
      if (block_min_[static_cast<std::size_t>(labels_[static_cast<std::size_t>(j - 1)])] < p) {
        return true;
      }
    }
    return false;
  }

  int n_;
  bool noncrossing_;
  const std::function<void(const SetPartition&)>& visit_;
  std::vector<int> labels_;
  std::vector<int> block_min_;
  std::vector<int> block_max_;
};

// Union-find over 1..n.
class Dsu {
public:
  explicit Dsu(int n) : parent_(static_cast<std::size_t>(n + 1)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

private:
  std::vector<int> parent_;
};

SetPartition from_dsu(int n, Dsu& dsu) {
  std::vector<int> roots(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    roots[static_cast<std::size_t>(i - 1)] = dsu.find(i);
  }
  return SetPartition::from_labels(roots);
}

bool blocks_cross(const std::vector<int>& a, const std::vector<int>& b) {
  // Two blocks cross iff the colour sequence of their merged elements
  // changes colour at least three times (a..b..a..b).
  std::vector<std::pair<int, int>> merged;
  merged.reserve(a.size() + b.size());
  for (int x : a) {
    merged.emplace_back(x, 0);
  }
  for (int x : b) {
    merged.emplace_back(x, 1);
  }
  std::sort(merged.begin(), merged.end());
  int changes = 0;
  for (std::size_t i = 1; i < merged.size(); ++i) {
    if (merged[i].second != merged[i - 1].second) {
      ++changes;
    }
  }
  return changes >= 3;
}

void require_noncrossing(const SetPartition& p, const char* what) {
  if (!is_noncrossing(p)) {
    throw DomainError(std::string(what) + ": partition " + p.to_string() + " is crossing");
  }
}

void require_same_size(const SetPartition& p, const SetPartition& q) {
  if (p.size() != q.size()) {
    throw DomainError("partitions have different ground sets");
  }
}

// Cached NC(n) listings used by the Moebius recursion.
const std::vector<SetPartition>& cached_nc(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const std::vector<SetPartition>>> cache;
  std::scoped_lock lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<const std::vector<SetPartition>>(enumerate_nc(n));
  }
  return *slot;
}

class MoebiusTable {
public:
  // mu(rho, upper) = -sum_{rho < sigma <= upper} mu(sigma, upper), recursing
  // within the candidate list of the enclosing interval.
  std::int64_t value(const SetPartition& lower, const SetPartition& upper) {
    if (auto hit = lookup(lower.key(), upper.key())) {
      return *hit;
    }
    std::vector<const SetPartition*> interval;
    for (const auto& rho : cached_nc(lower.size())) {
      if (refines(lower, rho) && refines(rho, upper)) {
        interval.push_back(&rho);
      }
    }
    return solve(lower, upper, interval);
  }

private:
  std::int64_t solve(const SetPartition& lower, const SetPartition& upper,
                     const std::vector<const SetPartition*>& candidates) {
    if (auto hit = lookup(lower.key(), upper.key())) {
      return *hit;
    }
    std::int64_t result = 0;
    if (!(lower == upper)) {
      std::vector<const SetPartition*> above;
      for (const SetPartition* rho : candidates) {
        if (refines(lower, *rho)) {
          above.push_back(rho);
        }
      }
      for (const SetPartition* rho : above) {
        if (!(*rho == lower)) {
          result -= solve(*rho, upper, above);
        }
      }
    } else {
      result = 1;
    }
    std::unique_lock lock(mutex_);
    memo_.emplace(std::make_pair(lower.key(), upper.key()), result);
    return result;
  }

  std::optional<std::int64_t> lookup(std::uint64_t lo, std::uint64_t up) {
    std::unique_lock lock(mutex_);
    auto it = memo_.find({lo, up});
    if (it == memo_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::mutex mutex_;
  // One table per ground-set size, keyed by packed labels.
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::int64_t, PairHash> memo_;
};

MoebiusTable& moebius_table(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<MoebiusTable>> tables;
  std::scoped_lock lock(mutex);
  auto& slot = tables[n];
  if (!slot) {
    slot = std::make_unique<MoebiusTable>();
  }
  return *slot;
}

void integer_partitions(int remaining, int largest, std::vector<int>& parts, std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(parts);
    return;
  }
  for (int s = std::min(remaining, largest); s >= 1; --s) {
    parts.push_back(s);
    integer_partitions(remaining - s, s, parts, out);
    parts.pop_back();
  }
}

// Set partitions of type (m_1, m_2, ...): n! / prod (s!)^{m_s} m_s!.
// Noncrossing ones (Kreweras): n! / ((n - k + 1)! prod m_s!), k blocks.
BigInt type_count(int n, const std::vector<int>& sizes, bool noncrossing) {
  std::map<int, int> multiplicity;
  for (int s : sizes) {
    ++multiplicity[s];
  }
  BigInt denominator = 1;
  for (auto [s, m] : multiplicity) {
    denominator *= factorial(static_cast<unsigned>(m));
    if (!noncrossing) {
      for (int i = 0; i < m; ++i) {
        denominator *= factorial(static_cast<unsigned>(s));
      }
    }
  }
  if (noncrossing) {
    denominator *= factorial(static_cast<unsigned>(n - static_cast<int>(sizes.size()) + 1));
  }
  return factorial(static_cast<unsigned>(n)) / denominator;
}

std::vector<BlockTypeCount> collect_types(int n, bool noncrossing) {
  if (n < 1) {
    throw DomainError("block types need n >= 1");
  }
  std::vector<std::vector<int>> types;
  std::vector<int> parts;
  integer_partitions(n, n, parts, types);
  std::sort(types.begin(), types.end());
  std::vector<BlockTypeCount> out;
  out.reserve(types.size());
  for (auto& sizes : types) {
    BigInt count = type_count(n, sizes, noncrossing);
    out.push_back({std::move(sizes), std::move(count)});
  }
  return out;
}

const std::vector<BlockTypeCount>& cached_types(int n, bool noncrossing) {
  static std::mutex mutex;
  static std::map<std::pair<int, bool>, std::unique_ptr<const std::vector<BlockTypeCount>>> cache;
  std::scoped_lock lock(mutex);
  auto& slot = cache[{n, noncrossing}];
  if (!slot) {
    slot = std::make_unique<const std::vector<BlockTypeCount>>(collect_types(n, noncrossing));
  }
  return *slot;
}

} // namespace

// ---------------------------------------------------------------------------
// SetPartition

SetPartition::SetPartition(int n, std::vector<std::vector<int>> blocks) : n_(n), blocks_(std::move(blocks)) {
  check_ground_set(n);
  std::vector<bool> seen(static_cast<std::size_t>(n + 1), false);
  int covered = 0;
  for (auto& block : blocks_) {
    if (block.empty()) {
      throw DomainError("set partition has an empty block");
    }
    for (int x : block) {
      if (x < 1 || x > n) {
        throw DomainError("element " + std::to_string(x) + " outside {1.." + std::to_string(n) + "}");
      }
      if (seen[static_cast<std::size_t>(x)]) {
        throw DomainError("element " + std::to_string(x) + " appears in two blocks");
      }
      seen[static_cast<std::size_t>(x)] = true;
      ++covered;
    }
    std::sort(block.begin(), block.end());
  }
  if (covered != n) {
    throw DomainError("blocks do not cover {1.." + std::to_string(n) + "}");
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  rebuild_labels();
}

void SetPartition::rebuild_labels() {
  labels_.assign(static_cast<std::size_t>(n_), 0);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (int x : blocks_[b]) {
      labels_[static_cast<std::size_t>(x - 1)] = static_cast<int>(b);
    }
  }
}

SetPartition SetPartition::singletons(int n) {
  check_ground_set(n);
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= n; ++i) {
    blocks.push_back({i});
  }
  return SetPartition(n, std::move(blocks));
}

SetPartition SetPartition::one_block(int n) {
  check_ground_set(n);
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  return SetPartition(n, {all});
}

SetPartition SetPartition::from_labels(std::span<const int> labels) {
  const int n = static_cast<int>(labels.size());
  check_ground_set(n);
  SetPartition p;
  p.n_ = n;
  std::map<int, int> relabel;
  for (int i = 0; i < n; ++i) {
    auto [it, inserted] = relabel.emplace(labels[static_cast<std::size_t>(i)], static_cast<int>(relabel.size()));
    if (inserted) {
      p.blocks_.emplace_back();
    }
    p.blocks_[static_cast<std::size_t>(it->second)].push_back(i + 1);
  }
  p.rebuild_labels();
  return p;
}

SetPartition SetPartition::parse(std::string_view text) {
  std::vector<std::vector<int>> blocks;
  int n = 0;
  std::size_t pos = 0;
  while (true) {
    auto next = text.find('/', pos);
    auto part = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    auto block = parse_int_list(part, ',');
    for (int x : block) {
      n = std::max(n, x);
    }
    blocks.push_back(std::move(block));
    if (next == std::string_view::npos) {
      break;
    }
    pos = next + 1;
  }
  return SetPartition(n, std::move(blocks));
}

std::uint64_t SetPartition::key() const noexcept {
  std::uint64_t k = 0;
  for (int label : labels_) {
    k = (k << 4U) | static_cast<std::uint64_t>(label);
  }
  return k;
}

std::vector<int> SetPartition::block_type() const {
  std::vector<int> sizes;
  sizes.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    sizes.push_back(static_cast<int>(b.size()));
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

std::string SetPartition::to_string() const {
  std::ostringstream out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b != 0) {
      out << '/';
    }
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i != 0) {
        out << ',';
      }
      out << blocks_[b][i];
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  if (n < 1) {
    throw DomainError("permutation must act on a nonempty set");
  }
  std::vector<bool> hit(static_cast<std::size_t>(n + 1), false);
  for (int v : images_) {
    if (v < 1 || v > n || hit[static_cast<std::size_t>(v)]) {
      throw DomainError("images do not form a bijection of {1.." + std::to_string(n) + "}");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::long_cycle(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    images[static_cast<std::size_t>(i - 1)] = i % n + 1;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::parse(std::string_view text) { return Permutation(parse_int_list(text, ',')); }

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i + 1);
  }
  return Permutation(std::move(inv));
}

std::vector<std::vector<int>> Permutation::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size() + 1, false);
  for (int start = 1; start <= size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) {
      continue;
    }
    std::vector<int> orbit;
    for (int x = start; !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
      seen[static_cast<std::size_t>(x)] = true;
      orbit.push_back(x);
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

int Permutation::orbit_count() const { return static_cast<int>(orbits().size()); }

std::string Permutation::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i != 0) {
      out << ',';
    }
    out << images_[i];
  }
  return out.str();
}

Permutation operator*(const Permutation& s, const Permutation& t) {
  if (s.size() != t.size()) {
    throw DomainError("cannot compose permutations of different degree");
  }
  std::vector<int> images(static_cast<std::size_t>(s.size()));
  for (int i = 1; i <= s.size(); ++i) {
    images[static_cast<std::size_t>(i - 1)] = s(t(i));
  }
  return Permutation(std::move(images));
}

NcInterval::NcInterval(SetPartition lower_, SetPartition upper_)
    : lower(std::move(lower_)), upper(std::move(upper_)) {
  require_same_size(lower, upper);
  require_noncrossing(lower, "NcInterval");
  require_noncrossing(upper, "NcInterval");
  if (!refines(lower, upper)) {
    throw DomainError("NcInterval: " + lower.to_string() + " does not refine " + upper.to_string());
  }
}

// ---------------------------------------------------------------------------
// Lattice operations

bool is_noncrossing(const SetPartition& p) {
  // Scan left to right keeping the stack of open blocks; a block may only
  // receive a new element while it is on top.
  const auto& blocks = p.blocks();
  std::vector<int> stack;
  for (int i = 1; i <= p.size(); ++i) {
    const int b = p.block_of(i);
    const auto& block = blocks[static_cast<std::size_t>(b)];
    if (block.front() == i) {
      stack.push_back(b);
    } else if (stack.empty() || stack.back() != b) {
      return false;
    }
    if (block.back() == i) {
      stack.pop_back();
    }
  }
  return true;
}

void for_each_nc(int n, const std::function<void(const SetPartition&)>& visit, int cap) {
  check_cap(n, std::min(cap, kMaxGroundSet), "enumerate_nc");
  RgsWalker(n, true, visit).run();
}

std::vector<SetPartition> enumerate_nc(int n, int cap) {
  std::vector<SetPartition> out;
  for_each_nc(n, [&](const SetPartition& p) { out.push_back(p); }, cap);
  return out;
}

void for_each_partition(int n, const std::function<void(const SetPartition&)>& visit, int cap) {
  check_cap(n, std::min(cap, kMaxGroundSet), "enumerate_all_partitions");
  RgsWalker(n, false, visit).run();
}

std::vector<SetPartition> enumerate_all_partitions(int n, int cap) {
  std::vector<SetPartition> out;
  for_each_partition(n, [&](const SetPartition& p) { out.push_back(p); }, cap);
  return out;
}

bool refines(const SetPartition& p, const SetPartition& q) {
  require_same_size(p, q);
  for (const auto& block : p.blocks()) {
    const int target = q.block_of(block.front());
    for (int x : block) {
      if (q.block_of(x) != target) {
        return false;
      }
    }
  }
  return true;
}

SetPartition partition_meet(const SetPartition& p, const SetPartition& q) {
  require_same_size(p, q);
  std::vector<int> labels(static_cast<std::size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i) {
    labels[static_cast<std::size_t>(i - 1)] = p.block_of(i) * kMaxGroundSet + q.block_of(i);
  }
  return SetPartition::from_labels(labels);
}

SetPartition partition_join(const SetPartition& p, const SetPartition& q) {
  require_same_size(p, q);
  Dsu dsu(p.size());
  for (const auto* part : {&p, &q}) {
    for (const auto& block : part->blocks()) {
      for (int x : block) {
        dsu.unite(x, block.front());
      }
    }
  }
  return from_dsu(p.size(), dsu);
}

SetPartition nc_meet(const SetPartition& p, const SetPartition& q) {
  require_noncrossing(p, "nc_meet");
  require_noncrossing(q, "nc_meet");
  return partition_meet(p, q);
}

SetPartition nc_join(const SetPartition& p, const SetPartition& q) {
  require_noncrossing(p, "nc_join");
  require_noncrossing(q, "nc_join");
  SetPartition current = partition_join(p, q);
  // Each merge strictly lowers the block count, so this terminates.
  while (true) {
    const auto& blocks = current.blocks();
    bool merged = false;
    for (std::size_t a = 0; a < blocks.size() && !merged; ++a) {
      for (std::size_t b = a + 1; b < blocks.size() && !merged; ++b) {
        if (blocks_cross(blocks[a], blocks[b])) {
          Dsu dsu(current.size());
          for (const auto& block : blocks) {
            for (int x : block) {
              dsu.unite(x, block.front());
            }
          }
          dsu.unite(blocks[a].front(), blocks[b].front());
          current = from_dsu(current.size(), dsu);
          merged = true;
        }
      }
    }
    if (!merged) {
      return current;
    }
  }
}

std::int64_t moebius_nc(const NcInterval& interval) {
  const int n = interval.lower.size();
  if (n > kMoebiusCap) {
    throw SizeLimitError("moebius_nc: n=" + std::to_string(n) + " exceeds cap " + std::to_string(kMoebiusCap));
  }
  return moebius_table(n).value(interval.lower, interval.upper);
}

// ---------------------------------------------------------------------------
// Cayley embedding

Permutation nc_to_permutation(const SetPartition& p) {
  require_noncrossing(p, "nc_to_permutation");
  std::vector<int> images(static_cast<std::size_t>(p.size()));
  for (const auto& block : p.blocks()) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      images[static_cast<std::size_t>(block[i] - 1)] = block[(i + 1) % block.size()];
    }
  }
  return Permutation(std::move(images));
}

std::optional<SetPartition> permutation_to_nc(const Permutation& s) {
  const int n = s.size();
  const Permutation c = Permutation::long_cycle(n);
  if (s.cayley_norm() + (s.inverse() * c).cayley_norm() != c.cayley_norm()) {
    return std::nullopt;
  }
  return SetPartition(n, s.orbits());
}

int cayley_distance(const Permutation& s1, const Permutation& s2) {
  if (s1.size() != s2.size()) {
    throw DomainError("cayley_distance: permutations of different degree");
  }
  return (s1.inverse() * s2).cayley_norm();
}

// ---------------------------------------------------------------------------
// Block-type tables

const std::vector<BlockTypeCount>& nc_block_types(int n) { return cached_types(n, true); }

const std::vector<BlockTypeCount>& all_block_types(int n) { return cached_types(n, false); }

BigInt partition_lattice_moebius(int m) {
  static std::mutex mutex;
  static std::vector<BigInt> cache{BigInt(0), BigInt(1)};
  if (m < 1) {
    throw DomainError("partition_lattice_moebius: m must be positive");
  }
  {
    std::scoped_lock lock(mutex);
    if (static_cast<std::size_t>(m) < cache.size()) {
      return cache[static_cast<std::size_t>(m)];
    }
  }
  // mu(0_m, 1_m) = -sum over rho < 1_m of prod_{V in rho} mu(0_|V|, 1_|V|).
  std::vector<BigInt> lower;
  for (int k = 1; k < m; ++k) {
    lower.push_back(partition_lattice_moebius(k));
  }
  BigInt sum = 0;
  for (const auto& type : all_block_types(m)) {
    if (type.sizes.size() == 1) {
      continue;
    }
    BigInt term = type.count;
    for (int size : type.sizes) {
      term *= lower[static_cast<std::size_t>(size - 1)];
    }
    sum += term;
  }
  std::scoped_lock lock(mutex);
  if (static_cast<std::size_t>(m) == cache.size()) {
    cache.push_back(-sum);
  }
  return -sum;
}

} // namespace freeprob::nc
