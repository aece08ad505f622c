#include "qpb/scalar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qpb {

Mono Mono::operator*(const Mono& o) const {
    Mono r;
    r.q = q + o.q;
    if (o.g.empty()) {
        r.g = g;
        return r;
    }
    if (g.empty()) {
        r.g = o.g;
        return r;
    }
    auto a = g.begin(), b = o.g.begin();
    while (a != g.end() || b != o.g.end()) {
        if (b == o.g.end() || (a != g.end() && a->first < b->first)) {
            r.g.push_back(*a++);
        } else if (a == g.end() || b->first < a->first) {
            r.g.push_back(*b++);
        } else {
            int e = a->second + b->second;
            if (e != 0) r.g.emplace_back(a->first, e);
            ++a;
            ++b;
        }
    }
    return r;
}

Mono Mono::pow(int e) const {
    Mono r;
    if (e == 0) return r;
    r.q = q * e;
    for (auto [c, x] : g) r.g.emplace_back(c, x * e);
    return r;
}

mpq_class rational_pow(const mpq_class& b, int e) {
    if (e < 0) {
        if (b == 0) throw std::domain_error("zero to a negative power");
        mpq_class inv = 1 / b;
        return rational_pow(inv, -e);
    }
    mpq_class r = 1, base = b;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Scalar::Scalar(long v) {
    if (v != 0) terms_.emplace_back(Mono{}, mpq_class(v));
}

Scalar::Scalar(const mpq_class& v) {
    if (v != 0) terms_.emplace_back(Mono{}, v);
}

Scalar::Scalar(const Mono& m, const mpq_class& c) {
    if (c != 0) terms_.emplace_back(m, c);
}

Scalar Scalar::q(int e) {
    Mono m;
    m.q = e;
    return Scalar(m, 1);
}

Scalar Scalar::g(int j, int k, int e) {
    if (j == k || e == 0) return Scalar(1);
    if (j > k) {
        std::swap(j, k);
        e = -e;
    }
    Mono m;
    m.g.emplace_back(phase_code(j, k), e);
    return Scalar(m, 1);
}

bool Scalar::is_one() const {
    return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

bool Scalar::has_phases() const {
    for (auto& t : terms_)
        if (!t.first.g.empty()) return true;
    return false;
}

void Scalar::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
            continue;
        }
        if (!out.empty() && out.back().second == 0) out.pop_back();
        out.push_back(std::move(t));
    }
    if (!out.empty() && out.back().second == 0) out.pop_back();
    terms_ = std::move(out);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    if (this == &o) {
        Scalar copy = o;
        return *this += copy;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->first < a->first) {
            out.push_back(*b++);
        } else {
            mpq_class c = a->second + b->second;
            if (c != 0) out.emplace_back(std::move(a->first), std::move(c));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
        r.terms_.emplace_back(a.terms_[0].first * b.terms_[0].first,
                              a.terms_[0].second * b.terms_[0].second);
        return r;
    }
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (auto& x : a.terms_)
        for (auto& y : b.terms_) r.terms_.emplace_back(x.first * y.first, x.second * y.second);
    r.normalize();
    return r;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::inverse() const {
    if (terms_.size() != 1) throw std::domain_error("non-invertible scalar: " + str());
    Scalar r;
    r.terms_.emplace_back(terms_[0].first.pow(-1), 1 / terms_[0].second);
    return r;
}

Scalar Scalar::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(1), base = *this;
    while (e) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

Scalar Scalar::specialize(const mpq_class& q_value, bool phases_to_one) const {
    if (q_value == 0) throw std::domain_error("specialization at q = 0");
    Scalar r;
    for (auto& [m, c] : terms_) {
        Mono k;
        if (!phases_to_one) k.g = m.g;
        r.terms_.emplace_back(std::move(k), c * rational_pow(q_value, m.q));
    }
    r.normalize();
    return r;
}

mpq_class Scalar::evaluate(const mpq_class& q_value,
                           const std::function<mpq_class(std::uint16_t)>& phases) const {
    // caller-supplied values may be non-canonical (e.g. mpq_class(2, 4))
    mpq_class qv = q_value;
    qv.canonicalize();
    mpq_class s = 0;
    for (auto& [m, c] : terms_) {
        mpq_class v = c * rational_pow(qv, m.q);
        for (auto [code, e] : m.g) {
            mpq_class g = phases(code);
            g.canonicalize();
            v *= rational_pow(g, e);
        }
        s += v;
    }
    return s;
}

Scalar Scalar::substitute_phases(const std::function<Scalar(std::uint16_t)>& image) const {
    Scalar r;
    for (auto& [m, c] : terms_) {
        Mono base;
        base.q = m.q;
        Scalar t(base, c);
        for (auto [code, e] : m.g) t *= image(code).pow(e);
        r += t;
    }
    return r;
}

std::size_t Scalar::hash() const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
    for (auto& [m, c] : terms_) {
        mix(static_cast<std::size_t>(m.q + 7919));
        for (auto [code, e] : m.g) mix((std::size_t(code) << 16) ^ std::size_t(e + 1000));
        mix(std::hash<std::string>{}(c.get_str()));
    }
    return h;
}

std::string format_mono(const Mono& m) {
    std::string s;
    auto add = [&](const std::string& f) {
        if (!s.empty()) s += "*";
        s += f;
    };
    if (m.q == 1)
        add("q");
    else if (m.q != 0)
        add("q^" + std::to_string(m.q));
    for (auto [code, e] : m.g) {
        std::string f = "g[" + std::to_string(phase_j(code)) + "," + std::to_string(phase_k(code)) + "]";
        if (e != 1) f += "^" + std::to_string(e);
        add(f);
    }
    return s;
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        mpq_class a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        std::string mono = format_mono(m);
        if (mono.empty()) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << mono;
        }
    }
    return os.str();
}

}  // namespace qpb
