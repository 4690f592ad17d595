#include "freeprob/cumulants.hpp"

#include "freeprob/error.hpp"
#include "freeprob/nc_core.hpp"

#include <algorithm>
#include <mutex>

namespace freeprob {

namespace {

template <class T>
T from_count(const BigInt& count) {
  if constexpr (std::is_same_v<T, double>) {
    return count.convert_to<double>();
  } else {
    return T(count);
  }
}

template <class T>
T from_bigint(const BigInt& value) {
  if constexpr (std::is_same_v<T, double>) {
    return value.convert_to<double>();
  } else {
    return T(value);
  }
}

// Products over a block-size profile, with values[k-1] the weight of a
// block of size k.
template <class T>
T block_product(const std::vector<int>& sizes, const std::vector<T>& values) {
  T p = T(1);
  for (int s : sizes) {
    p *= values[static_cast<std::size_t>(s - 1)];
  }
  return p;
}

void require_order(int k, int order, const char* what) {
  if (k < 0 || k > order) {
    throw DomainError(std::string(what) + ": index " + std::to_string(k) + " outside truncation order " +
                      std::to_string(order));
  }
}

void require_kind(CumulantKind got, CumulantKind want, const char* what) {
  if (got != want) {
    throw DomainError(std::string(what) + ": wrong cumulant kind");
  }
}

Word restrict_word(const Word& w, const std::vector<int>& block) {
  Word sub;
  sub.reserve(block.size());
  for (int pos : block) {
    sub.push_back(w[static_cast<std::size_t>(pos - 1)]);
  }
  return sub;
}

} // namespace

template <class T>
T BasicMomentSequence<T>::moment(int k) const {
  require_order(k, order(), "moment");
  return k == 0 ? T(1) : values_[static_cast<std::size_t>(k - 1)];
}

template <class T>
BasicMomentSequence<T> BasicMomentSequence<T>::truncated(int k) const {
  require_order(k, order(), "truncated");
  return BasicMomentSequence(std::vector<T>(values_.begin(), values_.begin() + k));
}

template <class T>
T BasicCumulantSequence<T>::cumulant(int k) const {
  if (k < 1) {
    throw DomainError("cumulant index must be >= 1");
  }
  require_order(k, order(), "cumulant");
  return values_[static_cast<std::size_t>(k - 1)];
}

template <class T>
BasicCumulantSequence<T> BasicCumulantSequence<T>::truncated(int k) const {
  require_order(k, order(), "truncated");
  return BasicCumulantSequence(kind_, std::vector<T>(values_.begin(), values_.begin() + k));
}

template class BasicMomentSequence<Rational>;
template class BasicMomentSequence<double>;
template class BasicCumulantSequence<Rational>;
template class BasicCumulantSequence<double>;

MomentSequence to_exact(std::span<const Rational> values) {
  return MomentSequence(std::vector<Rational>(values.begin(), values.end()));
}

RealMomentSequence to_real(const MomentSequence& m) {
  std::vector<double> v;
  for (const auto& x : m.values()) {
    v.push_back(to_double(x));
  }
  return RealMomentSequence(std::move(v));
}

RealCumulantSequence to_real(const CumulantSequence& r) {
  std::vector<double> v;
  for (const auto& x : r.values()) {
    v.push_back(to_double(x));
  }
  return RealCumulantSequence(r.kind(), std::move(v));
}

template <class T>
BasicMomentSequence<T> moments_from_free_cumulants(const BasicCumulantSequence<T>& r) {
  require_kind(r.kind(), CumulantKind::free, "moments_from_free_cumulants");
  std::vector<T> m;
  for (int n = 1; n <= r.order(); ++n) {
    T sum = T(0);
    for (const auto& type : nc::nc_block_types(n)) {
      sum += from_count<T>(type.count) * block_product(type.sizes, r.values());
    }
    m.push_back(sum);
  }
  return BasicMomentSequence<T>(std::move(m));
}

template <class T>
BasicCumulantSequence<T> free_cumulants_from_moments(const BasicMomentSequence<T>& m) {
  // m_n = r_n + (terms in r_1..r_{n-1}); solve order by order.
  std::vector<T> r;
  r.reserve(static_cast<std::size_t>(m.order()));
  for (int n = 1; n <= m.order(); ++n) {
    T rest = T(0);
    r.push_back(T(0));
    for (const auto& type : nc::nc_block_types(n)) {
      if (type.sizes.size() == 1) {
        continue;
      }
      rest += from_count<T>(type.count) * block_product(type.sizes, r);
    }
    r.back() = m.moment(n) - rest;
  }
  return BasicCumulantSequence<T>(CumulantKind::free, std::move(r));
}

CumulantSequence free_cumulants_by_moebius_sum(const MomentSequence& m) {
  std::vector<Rational> r;
  for (int n = 1; n <= m.order(); ++n) {
    const auto top = nc::SetPartition::one_block(n);
    Rational sum = 0;
    nc::for_each_nc(n, [&](const nc::SetPartition& p) {
      const auto mu = nc::moebius_nc(nc::NcInterval(p, top));
      if (mu == 0) {
        return;
      }
      Rational term = mu;
      for (const auto& block : p.blocks()) {
        term *= m.moment(static_cast<int>(block.size()));
      }
      sum += term;
    });
    r.push_back(sum);
  }
  return CumulantSequence(CumulantKind::free, std::move(r));
}

template <class T>
BasicCumulantSequence<T> classical_cumulants_from_moments(const BasicMomentSequence<T>& m) {
  // [pi, 1_n] is isomorphic to the partition lattice of the blocks of pi, so
  // mu(pi, 1_n) only depends on the number of blocks.
  std::vector<T> c;
  for (int n = 1; n <= m.order(); ++n) {
    T sum = T(0);
    for (const auto& type : nc::all_block_types(n)) {
      const T mu = from_bigint<T>(nc::partition_lattice_moebius(static_cast<int>(type.sizes.size())));
      sum += from_count<T>(type.count) * mu * block_product(type.sizes, m.values());
    }
    c.push_back(sum);
  }
  return BasicCumulantSequence<T>(CumulantKind::classical, std::move(c));
}

template <class T>
BasicMomentSequence<T> moments_from_classical_cumulants(const BasicCumulantSequence<T>& c) {
  require_kind(c.kind(), CumulantKind::classical, "moments_from_classical_cumulants");
  std::vector<T> m;
  for (int n = 1; n <= c.order(); ++n) {
    T sum = T(0);
    for (const auto& type : nc::all_block_types(n)) {
      sum += from_count<T>(type.count) * block_product(type.sizes, c.values());
    }
    m.push_back(sum);
  }
  return BasicMomentSequence<T>(std::move(m));
}

template BasicMomentSequence<Rational> moments_from_free_cumulants(const BasicCumulantSequence<Rational>&);
template BasicMomentSequence<double> moments_from_free_cumulants(const BasicCumulantSequence<double>&);
template BasicCumulantSequence<Rational> free_cumulants_from_moments(const BasicMomentSequence<Rational>&);
template BasicCumulantSequence<double> free_cumulants_from_moments(const BasicMomentSequence<double>&);
template BasicCumulantSequence<Rational> classical_cumulants_from_moments(const BasicMomentSequence<Rational>&);
template BasicCumulantSequence<double> classical_cumulants_from_moments(const BasicMomentSequence<double>&);
template BasicMomentSequence<Rational> moments_from_classical_cumulants(const BasicCumulantSequence<Rational>&);
template BasicMomentSequence<double> moments_from_classical_cumulants(const BasicCumulantSequence<double>&);

CumulantSequence free_cumulant_additivity_check(const CumulantSequence& a, const CumulantSequence& b) {
  require_kind(a.kind(), CumulantKind::free, "free_cumulant_additivity_check");
  require_kind(b.kind(), CumulantKind::free, "free_cumulant_additivity_check");
  if (a.order() != b.order()) {
    throw DomainError("free_cumulant_additivity_check: truncation orders differ");
  }
  std::vector<Rational> sum;
  for (int k = 1; k <= a.order(); ++k) {
    sum.push_back(a.cumulant(k) + b.cumulant(k));
  }
  return CumulantSequence(CumulantKind::free, std::move(sum));
}

// ---------------------------------------------------------------------------
// MomentFunctional

struct MomentFunctional::Cache {
  std::mutex mutex;
  std::map<Word, Rational> values;
};

MomentFunctional::MomentFunctional(int arity, int order, Generator generator)
    : arity_(arity), order_(order), generator_(std::move(generator)), cache_(std::make_shared<Cache>()) {
  if (arity < 1 || order < 1) {
    throw DomainError("MomentFunctional: arity and order must be positive");
  }
}

MomentFunctional MomentFunctional::from_table(int arity, int order, std::map<Word, Rational> table) {
  if (arity < 1 || order < 1) {
    throw DomainError("MomentFunctional: arity and order must be positive");
  }
  std::size_t expected = 0;
  std::size_t level = 1;
  for (int k = 1; k <= order; ++k) {
    level *= static_cast<std::size_t>(arity);
    expected += level;
  }
  for (const auto& [w, value] : table) {
    const bool letters_ok =
        std::all_of(w.begin(), w.end(), [arity](int letter) { return letter >= 1 && letter <= arity; });
    if (w.empty() || static_cast<int>(w.size()) > order || !letters_ok) {
      throw DomainError("MomentFunctional: table has a word outside the alphabet or truncation order");
    }
  }
  if (table.size() != expected) {
    throw DomainError("MomentFunctional: table must list every word up to the truncation order");
  }
  auto shared = std::make_shared<const std::map<Word, Rational>>(std::move(table));
  return MomentFunctional(arity, order, [shared](const Word& w) {
    auto it = shared->find(w);
    if (it == shared->end()) {
      throw DomainError("MomentFunctional: word missing from table");
    }
    return it->second;
  });
}

Rational MomentFunctional::operator()(const Word& w) const {
  if (static_cast<int>(w.size()) > order_) {
    throw DomainError("MomentFunctional: word length " + std::to_string(w.size()) + " exceeds truncation order " +
                      std::to_string(order_));
  }
  for (int letter : w) {
    if (letter < 1 || letter > arity_) {
      throw DomainError("MomentFunctional: letter " + std::to_string(letter) + " out of range");
    }
  }
  if (w.empty()) {
    return 1;
  }
  {
    std::scoped_lock lock(cache_->mutex);
    if (auto it = cache_->values.find(w); it != cache_->values.end()) {
      return it->second;
    }
  }
  Rational value = generator_(w);
  std::scoped_lock lock(cache_->mutex);
  return cache_->values.emplace(w, std::move(value)).first->second;
}

Rational mixed_free_cumulant(const MomentFunctional& f, const Word& w) {
  const int n = static_cast<int>(w.size());
  if (n == 0) {
    throw DomainError("mixed_free_cumulant: empty word");
  }
  if (n > f.order()) {
    throw DomainError("mixed_free_cumulant: word length exceeds truncation order");
  }
  const auto top = nc::SetPartition::one_block(n);
  Rational sum = 0;
  nc::for_each_nc(n, [&](const nc::SetPartition& p) {
    const auto mu = nc::moebius_nc(nc::NcInterval(p, top));
    if (mu == 0) {
      return;
    }
    Rational term = mu;
    for (const auto& block : p.blocks()) {
      term *= f(restrict_word(w, block));
      if (term == 0) {
        return;
      }
    }
    sum += term;
  });
  return sum;
}

// ---------------------------------------------------------------------------
// Free families

FreeFamilySpec::FreeFamilySpec(std::vector<MomentSequence> marginals) : marginals_(std::move(marginals)) {
  if (marginals_.empty()) {
    throw DomainError("FreeFamilySpec: at least one generator required");
  }
  order_ = marginals_.front().order();
  for (const auto& m : marginals_) {
    if (m.order() != order_) {
      throw DomainError("FreeFamilySpec: marginals must share a truncation order");
    }
    cumulants_.push_back(free_cumulants_from_moments(m));
  }
}

Rational free_mixed_moment(const FreeFamilySpec& spec, const Word& w) {
  const int n = static_cast<int>(w.size());
  if (n > spec.order()) {
    throw DomainError("free_mixed_moment: word length exceeds truncation order");
  }
  for (int letter : w) {
    if (letter < 1 || letter > spec.arity()) {
      throw DomainError("free_mixed_moment: letter out of range");
    }
  }
  if (n == 0) {
    return 1;
  }
  const auto& cumulants = spec.free_cumulants();
  Rational sum = 0;
  nc::for_each_nc(n, [&](const nc::SetPartition& p) {
    Rational term = 1;
    for (const auto& block : p.blocks()) {
      const int letter = w[static_cast<std::size_t>(block.front() - 1)];
      for (int pos : block) {
        if (w[static_cast<std::size_t>(pos - 1)] != letter) {
          return;
        }
      }
      term *= cumulants[static_cast<std::size_t>(letter - 1)].cumulant(static_cast<int>(block.size()));
      if (term == 0) {
        return;
      }
    }
    sum += term;
  });
  return sum;
}

MomentFunctional free_moment_functional(const FreeFamilySpec& spec) {
  auto shared = std::make_shared<const FreeFamilySpec>(spec);
  return MomentFunctional(spec.arity(), spec.order(),
                          [shared](const Word& w) { return free_mixed_moment(*shared, w); });
}

} // namespace freeprob
