#include "qpb/poly.hpp"

#include <stdexcept>

#include "qpb/grammar.hpp"

namespace qpb {

std::string Letter::str() const { return format_letter(*this); }

int word_degree(const Word& w) {
    int d = 0;
    for (auto& l : w) d += l.is_inverse() ? -1 : 1;
    return d;
}

NcPoly::NcPoly(const Scalar& c) {
    if (!c.is_zero()) terms_.emplace(Word{}, c);
}

NcPoly::NcPoly(const Letter& l) { terms_.emplace(Word{l}, Scalar(1)); }

NcPoly::NcPoly(const Word& w, const Scalar& c) {
    if (!c.is_zero()) terms_.emplace(w, c);
}

std::size_t NcPoly::max_length() const {
    std::size_t m = 0;
    for (auto& [w, c] : terms_) m = std::max(m, w.size());
    return m;
}

Scalar NcPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
}

void NcPoly::add(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void NcPoly::add(Word&& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(std::move(w), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
    for (auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
    for (auto& [w, c] : o.terms_) add(w, -c);
    return *this;
}

NcPoly NcPoly::operator-() const {
    NcPoly r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
    NcPoly r;
    for (auto& [u, c] : a.terms_)
        for (auto& [v, d] : b.terms_) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            r.add(std::move(w), c * d);
        }
    return r;
}

NcPoly operator*(const Scalar& c, const NcPoly& p) {
    NcPoly r;
    if (c.is_zero()) return r;
    for (auto& [w, d] : p.terms_) r.add(w, c * d);
    return r;
}

NcPoly NcPoly::map_scalars(const std::function<Scalar(const Scalar&)>& f) const {
    NcPoly r;
    for (auto& [w, c] : terms_) r.add(w, f(c));
    return r;
}

bool TensorPoly::KeyLess::operator()(const Key& a, const Key& b) const {
    WordLess wl;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (wl(a[i], b[i])) return true;
        if (wl(b[i], a[i])) return false;
    }
    return a.size() < b.size();
}

TensorPoly TensorPoly::pure(const std::vector<NcPoly>& legs) {
    TensorPoly t(legs.size());
    std::vector<std::pair<Key, Scalar>> acc{{Key{}, Scalar(1)}};
    for (auto& leg : legs) {
        std::vector<std::pair<Key, Scalar>> next;
        for (auto& [k, c] : acc)
            for (auto& [w, d] : leg.terms()) {
                Key nk = k;
                nk.push_back(w);
                next.emplace_back(std::move(nk), c * d);
            }
        acc = std::move(next);
    }
    for (auto& [k, c] : acc) t.add(k, c);
    return t;
}

void TensorPoly::add(const Key& k, const Scalar& c) {
    if (k.size() != rank_) throw std::invalid_argument("tensor rank mismatch");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
    if (o.rank_ != rank_) throw std::invalid_argument("tensor rank mismatch");
    for (auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o) {
    if (o.rank_ != rank_) throw std::invalid_argument("tensor rank mismatch");
    for (auto& [k, c] : o.terms_) add(k, -c);
    return *this;
}

TensorPoly operator*(const Scalar& c, const TensorPoly& t) {
    TensorPoly r(t.rank_);
    for (auto& [k, d] : t.terms_) r.add(k, c * d);
    return r;
}

TensorPoly tensor_mul(const TensorPoly& u, const TensorPoly& v) {
    if (u.rank() != v.rank()) throw std::invalid_argument("tensor rank mismatch");
    TensorPoly r(u.rank());
    for (auto& [k1, c1] : u.terms())
        for (auto& [k2, c2] : v.terms()) {
            TensorPoly::Key k = k1;
            for (std::size_t i = 0; i < k.size(); ++i) k[i].insert(k[i].end(), k2[i].begin(), k2[i].end());
            r.add(k, c1 * c2);
        }
    return r;
}

}  // namespace qpb
