#include "freeconv/combinatorics.hpp"

#include "freeconv/error.hpp"

namespace freeconv {

template <class Tag>
IndexedSeq<Tag> IndexedSeq<Tag>::truncate(std::size_t n) const {
  if (n > values_.size()) throw Error(ErrorCode::InsufficientOrder, "sequence shorter than requested order");
  return IndexedSeq(std::vector<Scalar>(values_.begin(), values_.begin() + n));
}

template class IndexedSeq<MomentTag>;
template class IndexedSeq<CumulantTag>;

Scalar fuss_catalan(const Scalar& p, const Scalar& r, unsigned m) {
  if (m == 0) return Scalar(1);
  Scalar prod = r;
  const Scalar mp = Scalar(static_cast<long>(m)) * p;
  for (unsigned i = 1; i < m; ++i) prod *= mp + r - Scalar(static_cast<long>(i));
  for (unsigned k = 2; k <= m; ++k) prod /= Scalar(static_cast<long>(k));
  return prod;
}

Scalar binomial(unsigned n, unsigned k) {
  if (k > n) return Scalar(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Scalar(mpq_class(b));
}

namespace {

// Column-wise table of [z^d] M(z)^s for M = 1 + sum m_n z^n, where m_d
// becomes known only at step d.
class PowerTable {
 public:
  explicit PowerTable(std::size_t order)
      : moments_(order + 1, Scalar(0)),
        table_(order + 1, std::vector<Scalar>(order + 1, Scalar(0))) {
    moments_[0] = Scalar(1);
    for (auto& row : table_) row[0] = Scalar(1);
  }

  // Records m_d and fills [z^d] M^s for every s >= 1.
  void push(std::size_t d, const Scalar& m_d) {
    moments_[d] = m_d;
    table_[1][d] = m_d;
    for (std::size_t s = 2; s < table_.size(); ++s) {
      Scalar acc(0);
      for (std::size_t j = 0; j <= d; ++j) acc += table_[s - 1][j] * moments_[d - j];
      table_[s][d] = acc;
    }
  }

  const Scalar& coeff(std::size_t power, std::size_t degree) const { return table_[power][degree]; }

 private:
  std::vector<Scalar> moments_;
  std::vector<std::vector<Scalar>> table_;
};

}  // namespace

// m_n = sum_{s=1}^{n} κ_s [z^{n-s}] M(z)^s, the non-crossing first-block recursion.
MomentSeq moments_from_free_cumulants(const CumulantSeq& kappa) {
  const std::size_t order = kappa.order();
  PowerTable powers(order);
  std::vector<Scalar> m(order);
  for (std::size_t n = 1; n <= order; ++n) {
    Scalar acc(0);
    for (std::size_t s = 1; s <= n; ++s) acc += kappa.at(s) * powers.coeff(s, n - s);
    m[n - 1] = acc;
    powers.push(n, acc);
  }
  return MomentSeq(std::move(m));
}

CumulantSeq free_cumulants_from_moments(const MomentSeq& m) {
  const std::size_t order = m.order();
  PowerTable powers(order);
  std::vector<Scalar> kappa(order);
  for (std::size_t n = 1; n <= order; ++n) {
    Scalar acc = m.at(n);
    for (std::size_t s = 1; s < n; ++s) acc -= kappa[s - 1] * powers.coeff(s, n - s);
    kappa[n - 1] = acc;
    powers.push(n, m.at(n));
  }
  return CumulantSeq(std::move(kappa));
}

// m_n = sum_{k=1}^{n} C(n-1,k-1) c_k m_{n-k}.
MomentSeq moments_from_classical_cumulants(const CumulantSeq& c) {
  const std::size_t order = c.order();
  std::vector<Scalar> m(order + 1, Scalar(0));
  m[0] = Scalar(1);
  for (std::size_t n = 1; n <= order; ++n) {
    Scalar acc(0);
    for (std::size_t k = 1; k <= n; ++k)
      acc += binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(k - 1)) * c.at(k) * m[n - k];
    m[n] = acc;
  }
  m.erase(m.begin());
  return MomentSeq(std::move(m));
}

CumulantSeq classical_cumulants_from_moments(const MomentSeq& m) {
  const std::size_t order = m.order();
  std::vector<Scalar> c(order);
  auto moment = [&](std::size_t k) { return k == 0 ? Scalar(1) : m.at(k); };
  for (std::size_t n = 1; n <= order; ++n) {
    Scalar acc = m.at(n);
    for (std::size_t k = 1; k < n; ++k)
      acc -= binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(k - 1)) * c[k - 1] * moment(n - k);
    c[n - 1] = acc;
  }
  return CumulantSeq(std::move(c));
}

bool seq_equal(std::span<const Scalar> a, std::span<const Scalar> b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_exact() && b[i].is_exact()) {
      if (!exact_equal(a[i], b[i])) return false;
    } else if (!approx_equal(a[i], b[i], tol)) {
      return false;
    }
  }
  return true;
}

}  // namespace freeconv
