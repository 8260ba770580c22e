#include <doctest.h>

#include <algorithm>

#include "sumfree/certifier.hpp"

using namespace sumfree;
using namespace sumfree::certify;

namespace {

Rational r(long p, long q = 1) { return make_rational(p, q); }

// Largest delta with c + d*delta <= 1/2 - delta, i.e. the root of equality.
Rational threshold(const Rational& c, const Rational& d) { return (r(1, 2) - c) / (d + 1); }

const Step* find_step(const std::vector<Step>& steps, const std::string& prefix) {
    for (const auto& s : steps)
        if (s.name.rfind(prefix, 0) == 0) return &s;
    return nullptr;
}

std::vector<const Step*> of_kind(const std::vector<Step>& steps, StepKind kind) {
    std::vector<const Step*> out;
    for (const auto& s : steps)
        if (s.kind == kind) out.push_back(&s);
    return out;
}

}  // namespace

TEST_CASE("branch thresholds") {
    const Certificate cert = derive_delta();
    REQUIRE(cert.branches.size() == 3);
    CHECK(cert.delta_star == r(1, 114));
    CHECK(cert.all_pass());

    // Displayed totals: 4/9 + 2d/3 + 2d, 4/9 + 2d, 4/9 + 16d/3.
    const Rational expected_sup[] = {threshold(r(4, 9), r(2, 3) + 2), threshold(r(4, 9), r(2)),
                                     threshold(r(4, 9), r(16, 3))};
    const Branch names[] = {Branch::A2Empty, Branch::Gap, Branch::Overlap};
    for (std::size_t i = 0; i < 3; ++i) {
        const BranchBound& bb = cert.branches[i];
        CHECK(bb.name == names[i]);
        CHECK(bb.delta_sup == expected_sup[i]);
        CHECK(bb.total == bb.displayed);
        CHECK(bb.total.a_coef == 0);
        CHECK(bb.total.constant == r(4, 9));
    }
    CHECK(cert.branches[0].delta_sup == r(1, 66));
    CHECK(cert.branches[1].delta_sup == r(1, 54));
    CHECK(cert.branches[2].delta_sup == r(1, 114));
    CHECK(cert.branches[2].total.to_string() == "4/9 + 16/3*delta");

    Rational lowest = cert.branches[0].delta_sup;
    for (const auto& bb : cert.branches) lowest = min(lowest, bb.delta_sup);
    CHECK(cert.delta_star == lowest);

    // Worst-case totals are attained at a = 4*delta for every branch.
    for (const auto& bb : cert.branches) {
        AffineForm sum;
        for (const auto& t : bb.terms) sum = sum + t.bound;
        const Rational d = r(1, 200);
        CHECK(sum(4 * d, d) <= bb.total(0, d));
        CHECK(sum(0, d) <= bb.total(0, d));
    }
}

TEST_CASE("chain at the boundary") {
    const Rational d = r(1, 114);
    const auto steps = check_chain(d, 4 * d, 0);
    CHECK(consistent(steps));
    const Step* three = find_step(steps, "case |C| >= (x+1-a)/3");
    REQUIRE(three);
    CHECK(three->holds);
    CHECK(three->rhs == r(1, 2) - r(1, 114));
    CHECK(three->lhs == three->rhs);

    const auto contradictions = of_kind(steps, StepKind::Contradiction);
    REQUIRE(contradictions.size() == 3);
    CHECK(contradictions[0]->holds);
    CHECK(contradictions[1]->holds);
    CHECK(!contradictions[2]->holds);
    CHECK(contradictions[2]->lhs == contradictions[2]->rhs);
}

TEST_CASE("chain with the top-window deficit") {
    const Rational d = r(1, 114);
    CHECK(consistent(check_chain(d, 4 * d, 2 * d)));

    const auto flat = check_chain(d, 0, 2 * d);
    const Step* two = find_step(flat, "eps-corrected case |C| >= x");
    const Step* three = find_step(flat, "eps-corrected case |C| >= (x");
    REQUIRE(two);
    REQUIRE(three);
    CHECK(two->rhs == r(1, 2) - d);
    CHECK(two->holds);
    CHECK(three->rhs == r(1, 2) - r(3, 2) * d);

    const auto over = check_chain(d, 0, 2 * d + r(1, 10000));
    CHECK(!consistent(over));
    CHECK(!find_step(over, "eps-corrected case |C| >= x")->holds);
}

TEST_CASE("chain below the boundary") {
    for (long den : {115L, 200L, 1000L}) {
        const Rational d = r(1, den);
        for (const Rational& a : {Rational(0), 2 * d, 4 * d}) {
            const auto steps = check_chain(d, a, 0);
            CHECK(consistent(steps));
            for (const auto* s : of_kind(steps, StepKind::Contradiction)) CHECK(s->holds);
        }
    }
}

TEST_CASE("chain above the boundary") {
    const Rational d = r(1, 100);
    const auto steps = check_chain(d, 4 * d, 0);
    CHECK(consistent(steps));
    const auto contradictions = of_kind(steps, StepKind::Contradiction);
    REQUIRE(contradictions.size() == 3);
    CHECK(!contradictions[2]->holds);
}

TEST_CASE("chain at zero") {
    const auto steps = check_chain(0, 0, 0);
    CHECK(consistent(steps));
    for (const char* name : {"case |C| >= x", "case |C| >= (x"}) {
        const Step* s = find_step(steps, name);
        REQUIRE(s);
        CHECK(s->holds);
        CHECK(s->rhs == r(1, 2));
    }
}

TEST_CASE("chain rejects inconsistent parameters") {
    const Rational d = r(1, 114);
    const auto steps = check_chain(d, 4 * d + r(1, 1000), 0);
    const Step* five = find_step(steps, "a <= 4*delta");
    REQUIRE(five);
    CHECK(!five->holds);
    CHECK(!consistent(steps));
    CHECK_THROWS_AS(check_chain(r(-1, 10), 0, 0), Error);
    CHECK_THROWS_AS(check_chain(0, r(-1, 10), 0), Error);
    CHECK_THROWS_AS(check_chain(0, 0, r(-1, 10)), Error);
}

TEST_CASE("step kinds and names") {
    const auto steps = check_chain(r(1, 114), r(4, 114), 0);
    CHECK(of_kind(steps, StepKind::Case).size() == 4);
    std::vector<std::string> names;
    for (const auto& s : steps) names.push_back(s.name);
    std::sort(names.begin(), names.end());
    CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
    CHECK(std::string(to_string(StepKind::Derivation)) == "derivation");
    CHECK(std::string(to_string(Branch::Overlap)) == "Overlap");
}

TEST_CASE("affine forms") {
    const AffineForm f{r(4, 9), r(-1), r(16, 3), r(1, 2)};
    CHECK(f(r(1), r(3), r(2)) == r(4, 9) - 1 + 16 + 1);
    CHECK((f + f)(r(1), r(3), r(2)) == 2 * f(r(1), r(3), r(2)));
    CHECK(AffineForm{}.to_string() == "0");
    CHECK(AffineForm{r(4, 9), 0, r(16, 3), 0}.to_string() == "4/9 + 16/3*delta");
    CHECK(AffineForm{0, r(-1), 0, 0}.to_string() == "-a");
}

TEST_CASE("sumset slack") {
    CHECK(sumset_slack(IntervalUnion::parse("(0,1/4);(3/4,1)")) == 0);
    CHECK(sumset_slack(IntervalUnion::parse("(0,1)")) == 0);
    CHECK(sumset_slack(IntervalUnion::parse("(0,1/10);(1/2,1)")) == r(1, 10));
    CHECK_THROWS_AS(sumset_slack(IntervalUnion()), Error);
}

TEST_CASE("harness") {
    const HarnessReport rep = sumset_bound_harness(10000, 6, 1);
    CHECK(rep.trials == 10000);
    CHECK(rep.violations == 0);
    CHECK(!rep.first_violation);
    CHECK(rep.min_slack >= 0);
    CHECK(sumset_slack(rep.min_slack_set) == rep.min_slack);

    const HarnessReport again = sumset_bound_harness(300, 4, 9);
    const HarnessReport same = sumset_bound_harness(300, 4, 9);
    CHECK(again.min_slack == same.min_slack);
    CHECK(again.zero_slack == same.zero_slack);
    CHECK(again.min_slack_set == same.min_slack_set);

    for (std::size_t i = 0; i < 200; ++i) {
        const auto u = random_union(5, i, 3);
        CHECK(u == random_union(5, i, 3));
        CHECK(!u.empty());
        CHECK(u.size() <= 3);
    }
    CHECK_THROWS_AS(sumset_bound_harness(0, 6, 1), Error);
    CHECK_THROWS_AS(sumset_bound_harness(10, 0, 1), Error);
}
