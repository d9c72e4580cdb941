#include "zhukit/fock.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

namespace zhukit {

long partition_weight(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0L); }

std::string partition_text(const Partition& p) {
  if (p.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    out += "h(-" + std::to_string(p[i]) + ")";
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out + " 1";
}

FockVector::FockVector(Terms terms) {
  for (auto& [p, c] : terms)
    if (!c.is_zero()) terms_.emplace_hint(terms_.end(), p, std::move(c));
}

FockVector FockVector::basis(Partition p, Rational c) {
  FockVector v;
  v.add_term(p, c);
  return v;
}

Rational FockVector::coeff(const Partition& p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

void FockVector::add_term(const Partition& p, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::optional<long> FockVector::weight() const {
  if (terms_.empty()) return std::nullopt;
  const long w = partition_weight(terms_.begin()->first);
  for (const auto& [p, c] : terms_)
    if (partition_weight(p) != w) return std::nullopt;
  return w;
}

long FockVector::max_weight() const {
  long w = -1;
  for (const auto& [p, c] : terms_) w = std::max(w, partition_weight(p));
  return w;
}

std::map<long, FockVector> FockVector::components() const {
  std::map<long, FockVector> out;
  for (const auto& [p, c] : terms_) out[partition_weight(p)].terms_.emplace(p, c);
  return out;
}

FockVector& FockVector::operator+=(const FockVector& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

FockVector& FockVector::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, v] : terms_) v *= c;
  return *this;
}

FockVector& FockVector::add_scaled(const Rational& c, const FockVector& o) {
  if (c.is_zero()) return *this;
  for (const auto& [p, v] : o.terms_) add_term(p, c * v);
  return *this;
}

std::string FockVector::to_text() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.to_string() + "*" + partition_text(p);
  }
  return out;
}

namespace {

void partitions_into(long w, int max_part, Partition& prefix, std::vector<Partition>& out) {
  if (w == 0) {
    out.push_back(prefix);
    return;
  }
  for (int part = static_cast<int>(std::min<long>(w, max_part)); part >= 1; --part) {
    prefix.push_back(part);
    partitions_into(w - part, part, prefix, out);
    prefix.pop_back();
  }
}

Partition with_part(const Partition& p, int part) {
  Partition out = p;
  out.insert(std::upper_bound(out.begin(), out.end(), part, std::greater<>()), part);
  return out;
}

}  // namespace

Heisenberg::Heisenberg(long cutoff) : cutoff_(cutoff) {
  if (cutoff < 0) throw std::invalid_argument("Heisenberg: cutoff must be >= 0");
  bases_.resize(static_cast<std::size_t>(cutoff) + 1);
  for (long w = 0; w <= cutoff; ++w) {
    Partition prefix;
    partitions_into(w, static_cast<int>(std::max<long>(w, 1)), prefix, bases_[static_cast<std::size_t>(w)]);
  }
}

const std::vector<Partition>& Heisenberg::weight_basis(long w) const {
  static const std::vector<Partition> empty;
  if (w < 0) return empty;
  if (w > cutoff_)
    throw CutoffError("weight " + std::to_string(w) + " exceeds cutoff " + std::to_string(cutoff_));
  return bases_[static_cast<std::size_t>(w)];
}

FockVector Heisenberg::h(std::int64_t n, const FockVector& v) const {
  FockVector out;
  if (n == 0) return out;
  for (const auto& [p, c] : v) {
    if (n < 0) {
      if (partition_weight(p) - n > cutoff_)
        throw CutoffError("h(" + std::to_string(n) + ") on " + partition_text(p) + " exceeds cutoff " +
                        std::to_string(cutoff_));
      out.add_term(with_part(p, static_cast<int>(-n)), c);
      continue;
    }
    // h(n) h(-n)^k ... = k n h(-n)^{k-1} ...
    const auto [lo, hi] = std::equal_range(p.begin(), p.end(), static_cast<int>(n), std::greater<>());
    const long mult = hi - lo;
    if (mult == 0) continue;
    Partition rest = p;
    rest.erase(rest.begin() + (lo - p.begin()));
    out.add_term(rest, c * Rational(mult * n));
  }
  return out;
}

FockVector Heisenberg::mode(const FockVector& a, std::int64_t j, const FockVector& b) const {
  FockVector out;
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) out.add_scaled(ca * cb, mode_basis(pa, j, pb));
  return out;
}

FockVector Heisenberg::mode_basis(const Partition& a, std::int64_t j, const Partition& b) const {
  // Y(1,x) = id: exact for every j, whatever the cutoff.
  if (a.empty()) return j == -1 ? FockVector::basis(b) : FockVector{};
  const long weight = partition_weight(a) + partition_weight(b) - j - 1;
  if (weight < 0) return {};
  if (weight > cutoff_)
    throw CutoffError("mode " + partition_text(a) + "_(" + std::to_string(j) + ") on " + partition_text(b) +
                      " has weight " + std::to_string(weight) + " above cutoff " + std::to_string(cutoff_));
  Key key{a, j, b};
  {
    std::shared_lock lock(memo_mutex_);
    const auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  FockVector out = compute_mode(a, j, b);
  for (const auto& [p, c] : out)
    if (partition_weight(p) != weight)
      throw std::logic_error("mode grading violated for " + partition_text(a) + "_(" + std::to_string(j) + ")");
  std::unique_lock lock(memo_mutex_);
  return memo_.try_emplace(std::move(key), std::move(out)).first->second;
}

FockVector Heisenberg::compute_mode(const Partition& a, std::int64_t j, const Partition& b) const {
  const int k = a.front();
  const Partition rest(a.begin() + 1, a.end());
  const long wrest = partition_weight(rest);
  const long wb = partition_weight(b);
  const FockVector bvec = FockVector::basis(b);
  FockVector out;
  // (-1)^i binom(-k, i) = binom(k+i-1, i)
  BigInt coef(1);
  for (long i = 0;; ++i) {
    if (i > 0) {
      coef *= k + i - 1;
      coef /= i;
    }
    const bool first_live = wrest + wb - (j + i) - 1 >= 0;
    const bool second_live = i >= 1 && i <= wb;
    if (!first_live && i > wb) break;
    const Rational c(coef);
    if (first_live) out.add_scaled(c, h(-k - i, mode_basis(rest, j + i, b)));
    if (second_live) {
      const FockVector hb = h(i, bvec);
      FockVector term;
      for (const auto& [p, cp] : hb) term.add_scaled(cp, mode_basis(rest, j - k - i, p));
      out.add_scaled(k % 2 == 0 ? -c : c, term);
    }
  }
  return out;
}

std::size_t Heisenberg::memo_size() const {
  std::shared_lock lock(memo_mutex_);
  return memo_.size();
}

}  // namespace zhukit
