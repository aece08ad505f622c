#include "qpb/maps.hpp"

#include <stdexcept>

namespace qpb {

TensorPoly reduce_legs(const TensorPoly& t, const Legs& legs) {
    if (legs.size() != t.rank()) throw std::invalid_argument("tensor rank does not match leg algebras");
    // Reduce leg by leg; each word reduced once.
    TensorPoly cur = t;
    for (std::size_t i = 0; i < legs.size(); ++i) {
        std::map<Word, NcPoly, WordLess> cache;
        TensorPoly next(t.rank());
        for (auto& [k, c] : cur.terms()) {
            auto it = cache.find(k[i]);
            if (it == cache.end()) it = cache.emplace(k[i], legs[i]->normal_form(NcPoly(k[i]))).first;
            for (auto& [w, d] : it->second.terms()) {
                TensorPoly::Key nk = k;
                nk[i] = w;
                next.add(nk, c * d);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

TensorPoly tensor_mul_reduced(const TensorPoly& a, const TensorPoly& b, const Legs& legs) {
    if (a.rank() != b.rank() || a.rank() != legs.size())
        throw std::invalid_argument("tensor rank mismatch");
    std::size_t r = legs.size();
    std::vector<std::map<std::pair<Word, Word>, NcPoly>> cache(r);
    auto leg_mul = [&](std::size_t i, const Word& u, const Word& v) -> const NcPoly& {
        auto key = std::make_pair(u, v);
        auto it = cache[i].find(key);
        if (it == cache[i].end()) it = cache[i].emplace(key, legs[i]->mul(NcPoly(u), NcPoly(v))).first;
        return it->second;
    };
    TensorPoly out(r);
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) {
            std::vector<std::pair<TensorPoly::Key, Scalar>> part{{TensorPoly::Key(), ca * cb}};
            for (std::size_t i = 0; i < r && !part.empty(); ++i) {
                const NcPoly& prod = leg_mul(i, ka[i], kb[i]);
                std::vector<std::pair<TensorPoly::Key, Scalar>> next;
                for (auto& [k, c] : part)
                    for (auto& [w, d] : prod.terms()) {
                        auto nk = k;
                        nk.push_back(w);
                        next.emplace_back(std::move(nk), c * d);
                    }
                part = std::move(next);
            }
            for (auto& [k, c] : part) out.add(k, c);
        }
    return out;
}

TensorPoly expand_leg(const TensorPoly& t, std::size_t leg, const std::function<TensorPoly(const Word&)>& f) {
    std::map<Word, TensorPoly, WordLess> cache;
    std::size_t new_rank = 0;
    TensorPoly out(t.rank());
    bool first = true;
    for (auto& [k, c] : t.terms()) {
        auto it = cache.find(k[leg]);
        if (it == cache.end()) it = cache.emplace(k[leg], f(k[leg])).first;
        const TensorPoly& img = it->second;
        if (first) {
            new_rank = t.rank() + img.rank() - 1;
            out = TensorPoly(new_rank);
            first = false;
        }
        for (auto& [ik, d] : img.terms()) {
            TensorPoly::Key nk(k.begin(), k.begin() + static_cast<long>(leg));
            nk.insert(nk.end(), ik.begin(), ik.end());
            nk.insert(nk.end(), k.begin() + static_cast<long>(leg) + 1, k.end());
            out.add(nk, c * d);
        }
    }
    if (first) {
        TensorPoly probe = f(Word{});
        return TensorPoly(t.rank() + probe.rank() - 1);
    }
    return out;
}

TensorPoly map_leg(const TensorPoly& t, std::size_t leg, const std::function<NcPoly(const Word&)>& f) {
    return expand_leg(t, leg, [&](const Word& w) { return as_tensor(f(w)); });
}

TensorPoly merge_legs(const TensorPoly& t, std::size_t i, const Ring& ring) {
    if (i + 1 >= t.rank()) throw std::invalid_argument("merge_legs: no such legs");
    std::map<std::pair<Word, Word>, NcPoly> cache;
    TensorPoly out(t.rank() - 1);
    for (auto& [k, c] : t.terms()) {
        auto key = std::make_pair(k[i], k[i + 1]);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, ring.mul(NcPoly(k[i]), NcPoly(k[i + 1]))).first;
        for (auto& [w, d] : it->second.terms()) {
            TensorPoly::Key nk;
            for (std::size_t j = 0; j < k.size(); ++j) {
                if (j == i) {
                    nk.push_back(w);
                    ++j;
                } else {
                    nk.push_back(k[j]);
                }
            }
            out.add(nk, c * d);
        }
    }
    return out;
}

NcPoly to_poly(const TensorPoly& t) {
    if (t.rank() != 1) throw std::invalid_argument("to_poly: rank is not 1");
    NcPoly p;
    for (auto& [k, c] : t.terms()) p.add(k[0], c);
    return p;
}

TensorPoly as_tensor(const NcPoly& p) {
    TensorPoly t(1);
    for (auto& [w, c] : p.terms()) t.add({w}, c);
    return t;
}

NcPoly AlgebraMap::word(const Word& w) const {
    std::lock_guard lk(mu_);
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    NcPoly r;
    if (w.empty()) {
        r = target_->normal_form(NcPoly(Scalar(1)));
    } else {
        Word pre(w.begin(), w.end() - 1);
        NcPoly head = word(pre);
        NcPoly last = image_(w.back());
        r = anti_ ? target_->mul(last, head) : target_->mul(head, last);
    }
    memo_.emplace(w, r);
    return r;
}

NcPoly AlgebraMap::operator()(const NcPoly& p) const {
    NcPoly out;
    for (auto& [w, c] : p.terms()) out += c * word(w);
    return out;
}

TensorPoly TensorAlgebraMap::word(const Word& w) const {
    std::lock_guard lk(mu_);
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    TensorPoly r(legs_.size());
    if (w.empty()) {
        r.add(TensorPoly::Key(legs_.size()), Scalar(1));
    } else {
        Word pre(w.begin(), w.end() - 1);
        r = tensor_mul_reduced(word(pre), image_(w.back()), legs_);
    }
    memo_.emplace(w, r);
    return r;
}

TensorPoly TensorAlgebraMap::operator()(const NcPoly& p) const {
    TensorPoly out(legs_.size());
    for (auto& [w, c] : p.terms()) out += c * word(w);
    return out;
}

}  // namespace qpb
