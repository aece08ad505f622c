#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "qpb/ring.hpp"

namespace qpb {

struct RewriteRule {
    Word lhs;
    NcPoly rhs;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConfluenceReport {
    bool pass = true;
    std::size_t ambiguities = 0;
    std::size_t unresolved = 0;
    int degree = 0;
    std::vector<std::string> witnesses;  // first few unresolved differences
};

struct PresentationOptions {
    // Extend the rule set by resolving overlaps up to the degree of each
    // input. Off for systems whose seed rules are already confluent.
    bool complete = false;
    std::uint64_t budget = 1'000'000;
    // Completion never stops below this degree; low-degree rules such as
    // p[2,2] -> p[1,1]^-1 only come out of longer overlaps.
    int min_degree = 0;
};

// Process-wide cap on every presentation's budget (the CLI's --budget).
void set_budget_cap(std::uint64_t cap);
std::uint64_t budget_cap();

// Generators in a total order plus oriented rules; deg-lex term order with
// the generator order as tie-break.
class Presentation : public Ring {
public:
    Presentation(std::string name, std::vector<Letter> generators, std::vector<RewriteRule> seed,
                 Descriptor desc, PresentationOptions opts = {});

    const std::string& name() const override { return name_; }
    const Descriptor& descriptor() const override { return desc_; }
    const std::vector<Letter>& generators() const { return gens_; }
    bool has_letter(const Letter& l) const { return rank_.count(l.code()) != 0; }
    int rank(const Letter& l) const;
    bool word_less(const Word& a, const Word& b) const;
    WordOrder order() const override;

    NcPoly normal_form(const NcPoly& p) const override;
    NcPoly mul(const NcPoly& a, const NcPoly& b) const override;
    bool equal_mod(const NcPoly& p, const NcPoly& r) const { return normal_form(p - r).is_zero(); }
    // Leftmost-first reduction with a plain worklist; shares no code path
    // with normal_form and is used to cross-check it.
    NcPoly normal_form_worklist(const NcPoly& p) const;

    ConfluenceReport check_confluence(int D) const;
    void ensure_complete(int D) const;
    int completed_degree() const;

    std::vector<RewriteRule> rules() const;
    const std::vector<RewriteRule>& seed_rules() const { return seed_; }
    // lhs - rhs of every seed rule.
    std::vector<NcPoly> defining_relations() const;

    std::uint64_t budget() const { return opts_.budget; }
    void set_budget(std::uint64_t b) { opts_.budget = b; }
    bool completing() const { return opts_.complete; }

private:
    using RWord = std::string;
    using RVec = std::vector<std::pair<RWord, Scalar>>;
    using Acc = std::unordered_map<RWord, Scalar>;
    struct RRule {
        RWord lhs;
        RVec rhs;
        std::uint64_t id;
    };

    RWord to_r(const Word& w) const;
    Word from_r(const RWord& w) const;
    static bool rless(const RWord& a, const RWord& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }

    std::shared_ptr<const RVec> ins(const RWord& w) const;
    void insert_word(const RWord& w0, const RWord& v, const Scalar& c, Acc& acc) const;
    RVec nf_r(const Acc& in) const;
    RVec nf_worklist_r(const Acc& in) const;
    void rebuild_index() const;
    void add_equation(Acc eq) const;
    void complete_locked(int D) const;
    void tick() const;
    NcPoly to_poly(const RVec& v) const;
    Acc to_acc(const NcPoly& p) const;

    struct Ambiguity {
        std::size_t r1, r2;
        std::size_t pos;  // overlap: suffix length; inclusion: start offset
        bool inclusion;
        std::size_t length;
    };
    std::vector<Ambiguity> ambiguities(int D) const;
    std::pair<Acc, Acc> resolve_sides(const Ambiguity& a) const;

    std::string name_;
    std::vector<Letter> gens_;
    std::unordered_map<std::uint32_t, unsigned char> rank_;
    std::vector<RewriteRule> seed_;
    Descriptor desc_;
    PresentationOptions opts_;

    mutable std::recursive_mutex mu_;
    mutable std::vector<RRule> rules_;
    mutable std::unordered_map<RWord, std::size_t> index_;
    mutable std::vector<std::size_t> lengths_;
    mutable std::uint64_t next_id_ = 0;
    mutable int completed_ = 0;
    mutable std::set<std::tuple<std::uint64_t, std::uint64_t, std::size_t, bool>> done_;
    mutable std::unordered_map<RWord, std::shared_ptr<const RVec>> memo_;
    mutable std::uint64_t steps_ = 0;
};

}  // namespace qpb
