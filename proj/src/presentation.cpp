#include "qpb/presentation.hpp"

#include <algorithm>
#include <atomic>
#include <map>

namespace qpb {

namespace {
constexpr std::size_t kMemoCap = 4'000'000;
std::atomic<std::uint64_t> g_cap{~std::uint64_t(0)};
}

void set_budget_cap(std::uint64_t cap) { g_cap = cap; }
std::uint64_t budget_cap() { return g_cap; }

Presentation::Presentation(std::string name, std::vector<Letter> generators, std::vector<RewriteRule> seed,
                           Descriptor desc, PresentationOptions opts)
    : name_(std::move(name)), gens_(std::move(generators)), seed_(std::move(seed)), desc_(std::move(desc)),
      opts_(opts) {
    if (gens_.size() > 250) throw std::invalid_argument("too many generators");
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (!rank_.emplace(gens_[i].code(), static_cast<unsigned char>(i)).second)
            throw std::invalid_argument("duplicate generator " + format_letter(gens_[i]));
    }
    std::set<RWord> seen;
    for (auto& r : seed_) {
        if (r.lhs.empty()) throw std::invalid_argument("rule with empty left-hand side");
        RRule rr;
        rr.lhs = to_r(r.lhs);
        if (!seen.insert(rr.lhs).second)
            throw std::invalid_argument("duplicate rule left-hand side " + format_word(r.lhs));
        for (auto& [w, c] : r.rhs.terms()) {
            RWord rw = to_r(w);
            if (!rless(rw, rr.lhs))
                throw std::invalid_argument("rule not order-compatible: " + format_word(r.lhs) + " -> " +
                                            format(r.rhs));
            rr.rhs.emplace_back(std::move(rw), c);
        }
        rr.id = next_id_++;
        rules_.push_back(std::move(rr));
    }
    rebuild_index();
}

int Presentation::rank(const Letter& l) const {
    auto it = rank_.find(l.code());
    if (it == rank_.end()) throw std::invalid_argument("letter not in presentation: " + format_letter(l));
    return it->second;
}

bool Presentation::word_less(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        auto x = rank_.find(a[i].code()), y = rank_.find(b[i].code());
        if (x != rank_.end() && y != rank_.end()) return x->second < y->second;
        return a[i] < b[i];
    }
    return false;
}

WordOrder Presentation::order() const {
    return [this](const Word& a, const Word& b) { return word_less(a, b); };
}

Presentation::RWord Presentation::to_r(const Word& w) const {
    RWord r;
    r.reserve(w.size());
    for (auto& l : w) {
        auto it = rank_.find(l.code());
        if (it == rank_.end())
            throw std::invalid_argument("letter not in presentation " + name_ + ": " + format_letter(l));
        r.push_back(static_cast<char>(it->second));
    }
    return r;
}

Word Presentation::from_r(const RWord& w) const {
    Word r;
    r.reserve(w.size());
    for (char c : w) r.push_back(gens_[static_cast<unsigned char>(c)]);
    return r;
}

NcPoly Presentation::to_poly(const RVec& v) const {
    NcPoly p;
    for (auto& [w, c] : v) p.add(from_r(w), c);
    return p;
}

Presentation::Acc Presentation::to_acc(const NcPoly& p) const {
    Acc a;
    for (auto& [w, c] : p.terms()) a[to_r(w)] += c;
    return a;
}

void Presentation::rebuild_index() const {
    index_.clear();
    std::set<std::size_t> lens;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        index_[rules_[i].lhs] = i;
        lens.insert(rules_[i].lhs.size());
    }
    lengths_.assign(lens.begin(), lens.end());
}

void Presentation::tick() const {
    std::uint64_t b = std::min<std::uint64_t>(opts_.budget, g_cap);
    if (++steps_ > b)
        throw BudgetExceeded("reduction budget of " + std::to_string(b) + " rule applications exceeded in " + name_);
}

std::shared_ptr<const Presentation::RVec> Presentation::ins(const RWord& w) const {
    auto hit = memo_.find(w);
    if (hit != memo_.end()) return hit->second;
    for (std::size_t L : lengths_) {
        if (L > w.size()) break;
        auto f = index_.find(w.substr(w.size() - L));
        if (f == index_.end()) continue;
        tick();
        const RRule& r = rules_[f->second];
        RWord pre = w.substr(0, w.size() - L);
        Acc acc;
        for (auto& [v, s] : r.rhs) insert_word(pre, v, s, acc);
        auto out = std::make_shared<RVec>();
        for (auto& [x, c] : acc)
            if (!c.is_zero()) out->emplace_back(x, std::move(c));
        memo_.emplace(w, out);
        return out;
    }
    auto out = std::make_shared<RVec>(RVec{{w, Scalar(1)}});
    memo_.emplace(w, out);
    return out;
}

void Presentation::insert_word(const RWord& w0, const RWord& v, const Scalar& c, Acc& acc) const {
    if (c.is_zero()) return;
    RVec cur{{w0, c}};
    for (char y : v) {
        Acc next;
        for (auto& [u, d] : cur) {
            auto r = ins(u + y);
            for (auto& [x, e] : *r) next[x] += d * e;
        }
        cur.clear();
        for (auto& [x, e] : next)
            if (!e.is_zero()) cur.emplace_back(x, std::move(e));
    }
    for (auto& [x, d] : cur) acc[x] += d;
}

Presentation::RVec Presentation::nf_r(const Acc& in) const {
    Acc acc;
    for (auto& [w, c] : in) insert_word(RWord(), w, c, acc);
    RVec out;
    for (auto& [w, c] : acc)
        if (!c.is_zero()) out.emplace_back(w, std::move(c));
    return out;
}

Presentation::RVec Presentation::nf_worklist_r(const Acc& in) const {
    auto greater = [](const RWord& a, const RWord& b) { return rless(b, a); };
    std::map<RWord, Scalar, decltype(greater)> work(greater);
    for (auto& [w, c] : in)
        if (!c.is_zero()) work[w] += c;
    RVec out;
    while (!work.empty()) {
        auto it = work.begin();
        RWord w = it->first;
        Scalar c = std::move(it->second);
        work.erase(it);
        if (c.is_zero()) continue;
        bool reduced = false;
        for (std::size_t i = 0; i < w.size() && !reduced; ++i) {
            for (std::size_t L : lengths_) {
                if (i + L > w.size()) break;
                auto f = index_.find(w.substr(i, L));
                if (f == index_.end()) continue;
                tick();
                const RRule& r = rules_[f->second];
                for (auto& [v, s] : r.rhs) {
                    RWord nw = w.substr(0, i) + v + w.substr(i + L);
                    auto [slot, fresh] = work.try_emplace(nw, c * s);
                    if (!fresh) slot->second += c * s;
                }
                reduced = true;
                break;
            }
        }
        if (!reduced) out.emplace_back(std::move(w), std::move(c));
    }
    return out;
}

NcPoly Presentation::normal_form(const NcPoly& p) const {
    std::lock_guard lk(mu_);
    if (opts_.complete) complete_locked(static_cast<int>(p.max_length()));
    if (memo_.size() > kMemoCap) memo_.clear();
    steps_ = 0;
    return to_poly(nf_r(to_acc(p)));
}

NcPoly Presentation::mul(const NcPoly& a, const NcPoly& b) const {
    std::lock_guard lk(mu_);
    if (opts_.complete) complete_locked(static_cast<int>(a.max_length() + b.max_length()));
    if (memo_.size() > kMemoCap) memo_.clear();
    steps_ = 0;
    RVec A = nf_r(to_acc(a)), B = nf_r(to_acc(b));
    Acc acc;
    for (auto& [u, c] : A)
        for (auto& [v, d] : B) insert_word(u, v, c * d, acc);
    RVec out;
    for (auto& [w, c] : acc)
        if (!c.is_zero()) out.emplace_back(w, std::move(c));
    return to_poly(out);
}

NcPoly Presentation::normal_form_worklist(const NcPoly& p) const {
    std::lock_guard lk(mu_);
    if (opts_.complete) complete_locked(static_cast<int>(p.max_length()));
    steps_ = 0;
    return to_poly(nf_worklist_r(to_acc(p)));
}

std::vector<RewriteRule> Presentation::rules() const {
    std::lock_guard lk(mu_);
    std::vector<RewriteRule> out;
    for (auto& r : rules_) {
        RewriteRule x;
        x.lhs = from_r(r.lhs);
        x.rhs = to_poly(r.rhs);
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<NcPoly> Presentation::defining_relations() const {
    std::vector<NcPoly> out;
    for (auto& r : seed_) out.push_back(NcPoly(r.lhs) - r.rhs);
    return out;
}

int Presentation::completed_degree() const {
    std::lock_guard lk(mu_);
    return completed_;
}

void Presentation::ensure_complete(int D) const {
    std::lock_guard lk(mu_);
    if (opts_.complete) complete_locked(D);
}

std::vector<Presentation::Ambiguity> Presentation::ambiguities(int D) const {
    std::vector<Ambiguity> out;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const RWord& l1 = rules_[i].lhs;
        for (std::size_t j = 0; j < rules_.size(); ++j) {
            const RWord& l2 = rules_[j].lhs;
            std::size_t m = std::min(l1.size(), l2.size());
            for (std::size_t ov = 1; ov < m; ++ov) {
                std::size_t len = l1.size() + l2.size() - ov;
                if (static_cast<int>(len) > D) continue;
                if (l1.compare(l1.size() - ov, ov, l2, 0, ov) == 0) out.push_back({i, j, ov, false, len});
            }
            if (i != j && l2.size() <= l1.size() && static_cast<int>(l1.size()) <= D) {
                for (std::size_t p = l1.find(l2); p != RWord::npos; p = l1.find(l2, p + 1))
                    out.push_back({i, j, p, true, l1.size()});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Ambiguity& a, const Ambiguity& b) { return a.length < b.length; });
    return out;
}

std::pair<Presentation::Acc, Presentation::Acc> Presentation::resolve_sides(const Ambiguity& a) const {
    const RRule& r1 = rules_[a.r1];
    const RRule& r2 = rules_[a.r2];
    Acc s1, s2;
    if (!a.inclusion) {
        RWord tail = r2.lhs.substr(a.pos);
        RWord head = r1.lhs.substr(0, r1.lhs.size() - a.pos);
        for (auto& [v, c] : r1.rhs) s1[v + tail] += c;
        for (auto& [v, c] : r2.rhs) s2[head + v] += c;
    } else {
        RWord head = r1.lhs.substr(0, a.pos);
        RWord tail = r1.lhs.substr(a.pos + r2.lhs.size());
        for (auto& [v, c] : r1.rhs) s1[v] += c;
        for (auto& [v, c] : r2.rhs) s2[head + v + tail] += c;
    }
    return {s1, s2};
}

void Presentation::add_equation(Acc eq) const {
    std::vector<Acc> queue{std::move(eq)};
    while (!queue.empty()) {
        Acc p = std::move(queue.back());
        queue.pop_back();
        steps_ = 0;
        RVec n = nf_r(p);
        if (n.empty()) continue;
        auto lead = std::max_element(n.begin(), n.end(),
                                     [](const auto& x, const auto& y) { return rless(x.first, y.first); });
        if (!lead->second.is_monomial())
            throw std::runtime_error("completion of " + name_ + " met a non-invertible leading coefficient " +
                                     lead->second.str());
        Scalar ci = lead->second.inverse();
        RRule r;
        r.lhs = lead->first;
        for (auto& [w, c] : n)
            if (w != r.lhs) r.rhs.emplace_back(w, -(c * ci));
        r.id = next_id_++;
        std::vector<RRule> keep;
        for (auto& e : rules_) {
            if (e.lhs.find(r.lhs) != RWord::npos) {
                Acc back;
                back[e.lhs] += Scalar(1);
                for (auto& [w, c] : e.rhs) back[w] -= c;
                queue.push_back(std::move(back));
            } else {
                keep.push_back(std::move(e));
            }
        }
        keep.push_back(std::move(r));
        rules_ = std::move(keep);
        rebuild_index();
        memo_.clear();
    }
}

void Presentation::complete_locked(int D) const {
    D = std::max(D, opts_.min_degree);
    if (D <= completed_) return;
    for (;;) {
        auto ambs = ambiguities(D);
        std::vector<std::tuple<std::uint64_t, std::uint64_t, std::size_t, bool, std::size_t>> todo;
        for (auto& a : ambs) {
            auto key = std::make_tuple(rules_[a.r1].id, rules_[a.r2].id, a.pos, a.inclusion);
            if (!done_.count(key))
                todo.emplace_back(rules_[a.r1].id, rules_[a.r2].id, a.pos, a.inclusion, a.length);
        }
        if (todo.empty()) break;
        for (auto& [id1, id2, pos, incl, len] : todo) {
            done_.insert({id1, id2, pos, incl});
            std::size_t i1 = rules_.size(), i2 = rules_.size();
            for (std::size_t k = 0; k < rules_.size(); ++k) {
                if (rules_[k].id == id1) i1 = k;
                if (rules_[k].id == id2) i2 = k;
            }
            if (i1 == rules_.size() || i2 == rules_.size()) continue;
            auto [s1, s2] = resolve_sides({i1, i2, pos, incl, len});
            steps_ = 0;
            RVec n1 = nf_r(s1), n2 = nf_r(s2);
            Acc diff;
            for (auto& [w, c] : n1) diff[w] += c;
            for (auto& [w, c] : n2) diff[w] -= c;
            bool zero = true;
            for (auto& [w, c] : diff)
                if (!c.is_zero()) zero = false;
            if (!zero) add_equation(std::move(diff));
        }
    }
    completed_ = D;
}

ConfluenceReport Presentation::check_confluence(int D) const {
    std::lock_guard lk(mu_);
    if (opts_.complete) complete_locked(D);
    ConfluenceReport rep;
    rep.degree = D;
    for (auto& a : ambiguities(D)) {
        ++rep.ambiguities;
        auto [s1, s2] = resolve_sides(a);
        steps_ = 0;
        RVec n1 = nf_worklist_r(s1), n2 = nf_worklist_r(s2);
        NcPoly diff = to_poly(n1) - to_poly(n2);
        if (!diff.is_zero()) {
            ++rep.unresolved;
            rep.pass = false;
            if (rep.witnesses.size() < 5) {
                Word w = from_r(a.inclusion ? rules_[a.r1].lhs
                                            : rules_[a.r1].lhs + rules_[a.r2].lhs.substr(a.pos));
                rep.witnesses.push_back(format_word(w) + ": " + format(diff, order()));
            }
        }
    }
    return rep;
}

}  // namespace qpb
