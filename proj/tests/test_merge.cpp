#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "transrep/io.hpp"
#include "transrep/merge.hpp"
#include "transrep/verify.hpp"

using namespace transrep;
using transrep::testing::lookahead_example;
using transrep::testing::random_system;
using transrep::testing::running_example;

namespace {

RationalField q;

std::vector<Rational> rationals(std::initializer_list<long long> values) {
    std::vector<Rational> out;
    for (long long v : values) out.emplace_back(v);
    return out;
}

Matrix<RationalField> ground_columns(const Tableau<RationalField>& tab) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < tab.columns.size(); ++c)
        if (tab.columns[c].is_ground()) cols.push_back(c);
    return column_select(q, tab.matrix, cols);
}

// Labels of the support columns of a constraint row.
std::vector<std::string> support_labels(const IterationRecord<RationalField>& rec,
                                        const SetSystem& sys, std::size_t row) {
    std::vector<std::string> out;
    for (std::size_t c : rec.constraints.rows[row].support)
        out.push_back(column_label(rec.tableau_columns[c], sys));
    return out;
}

}  // namespace

TEST_CASE("step_two_choose picks the first admissible candidate") {
    SUBCASE("no constraints gives 1") {
        ConstraintTable<RationalField> z;
        CHECK(step_two_choose(q, z) == Rational(1));
    }
    SUBCASE("(-1, 1) forbids 1, so -1 is chosen") {
        ConstraintTable<RationalField> z;
        z.rows.push_back({Rational(-1), Rational(1), {}});
        CHECK(step_two_choose(q, z) == Rational(-1));
    }
    SUBCASE("the three-row table from the worked example forces 2") {
        ConstraintTable<RationalField> z;
        z.rows.push_back({Rational(1), Rational(1), {}});
        z.rows.push_back({Rational(1), Rational(-1), {}});
        z.rows.push_back({Rational(-1), Rational(-1), {}});
        CHECK(step_two_choose(q, z) == Rational(2));
    }
    SUBCASE("GF(2) exhausts when its single candidate is forbidden") {
        PrimeField f2(2);
        ConstraintTable<PrimeField> z;
        z.rows.push_back({f2.from_int(-1), f2.one(), {}});
        CHECK_THROWS_AS(step_two_choose(f2, z), FieldExhausted);
        try {
            step_two_choose(f2, z);
        } catch (const FieldExhausted& e) {
            CHECK(e.constraint_rows == 1);
            CHECK(e.suggested_prime == 3);
        }
    }
}

TEST_CASE("the worked example trace is reproduced value for value") {
    SetSystem sys = running_example();
    TraceResult<RationalField> tr = trace(q, sys);
    REQUIRE(tr.iterations.size() == 5);

    std::vector<IndeterminateTag> order{{1, 0}, {2, 0}, {2, 1}, {2, 3}, {1, 4}};
    for (std::size_t k = 0; k < 5; ++k) CHECK(tr.iterations[k].tag == order[k]);

    SUBCASE("iterations 1 and 2 have empty tables and value 1") {
        CHECK(tr.iterations[0].constraints.rows.empty());
        CHECK(tr.iterations[0].chosen == Rational(1));
        CHECK(tr.iterations[1].constraints.rows.empty());
        CHECK(tr.iterations[1].chosen == Rational(1));
        // after the two merges into column a it reads (1, 1, 1)
        CHECK(tr.iterations[2].tableau.column(0) == rationals({1, 1, 1}));
    }

    SUBCASE("iteration 3: one constraint from Y = {a, c}, value -1") {
        const auto& rec = tr.iterations[2];
        REQUIRE(rec.constraints.rows.size() == 1);
        const auto& row = rec.constraints.rows[0];
        bool expected = (row.det_left == Rational(1) && row.det_right == Rational(-1)) ||
                        (row.det_left == Rational(-1) && row.det_right == Rational(1));
        CHECK(expected);  // the recorded pair up to a common sign
        CHECK(support_labels(rec, sys, 0) == std::vector<std::string>{"a", "c"});
        CHECK(rec.chosen == Rational(-1));
    }

    SUBCASE("iteration 4: three constraints, value 2") {
        const auto& rec = tr.iterations[3];
        CHECK(rec.tableau.column(1) == rationals({0, 1, -1}));  // column b after iteration 3
        REQUIRE(rec.constraints.rows.size() == 3);
        std::vector<std::pair<Rational, Rational>> pairs;
        for (const auto& row : rec.constraints.rows) pairs.emplace_back(row.det_left, row.det_right);
        std::vector<std::pair<Rational, Rational>> expected{
            {Rational(1), Rational(1)}, {Rational(1), Rational(-1)}, {Rational(-1), Rational(-1)}};
        CHECK(pairs == expected);
        CHECK(support_labels(rec, sys, 0) == std::vector<std::string>{"a", "b"});
        CHECK(support_labels(rec, sys, 1) == std::vector<std::string>{"a", "c"});
        CHECK(support_labels(rec, sys, 2) == std::vector<std::string>{"b", "c"});
        CHECK(rec.chosen == Rational(2));
    }

    SUBCASE("iteration 5: two constraints, value 1") {
        const auto& rec = tr.iterations[4];
        REQUIRE(rec.constraints.rows.size() == 2);
        CHECK(rec.constraints.rows[0].det_left == Rational(-2));
        CHECK(rec.constraints.rows[0].det_right == Rational(1));
        CHECK(rec.constraints.rows[1].det_left == Rational(1));
        CHECK(rec.constraints.rows[1].det_right == Rational(-2));
        CHECK(rec.chosen == Rational(1));
    }

    SUBCASE("final representation and assignments") {
        const Representation<RationalField>& rep = tr.representation;
        CHECK(rep.matrix.column(4) == rationals({1, 1, 0}));  // column e after iteration 5
        Matrix<RationalField> expected(3, 5, q.zero());
        std::vector<long long> values{1, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1, -1, 0, 2, 0};
        for (std::size_t i = 0; i < 15; ++i) expected.entries[i] = Rational(values[i]);
        CHECK(rep.matrix == expected);
        std::vector<Rational> assigned;
        for (const auto& [tag, value] : rep.assignments) assigned.push_back(value);
        CHECK(assigned == rationals({1, 1, -1, 2, 1}));
    }
}

TEST_CASE("partition systems pass through unchanged") {
    SetSystem sys = SetSystem::make({"a", "b", "c", "d"}, {{"A", {"a", "c"}}, {"B", {"b", "d"}}});
    SUBCASE("over the rationals") {
        TraceResult<RationalField> tr = trace(q, sys);
        CHECK(tr.iterations.empty());
        IncidenceMatrix inc = incidence(sys);
        for (std::size_t i = 0; i < inc.rows; ++i)
            for (std::size_t j = 0; j < inc.cols; ++j)
                CHECK(tr.representation.matrix.at(i, j) == Rational(inc.at(i, j)));
    }
    SUBCASE("over GF(2)") {
        PrimeField f2(2);
        Representation<PrimeField> rep = represent(f2, sys);
        IncidenceMatrix inc = incidence(sys);
        for (std::size_t i = 0; i < inc.rows; ++i)
            for (std::size_t j = 0; j < inc.cols; ++j) CHECK(rep.matrix.at(i, j) == inc.at(i, j));
    }
}

TEST_CASE("look-ahead keeps unmerged indeterminate columns in play") {
    SetSystem sys = lookahead_example();
    TraceResult<RationalField> tr = trace(q, sys);
    REQUIRE(tr.iterations.size() == 3);  // t21, t22, t32

    SUBCASE("t22's table is non-empty and mentions the t32 column") {
        const auto& rec = tr.iterations[1];
        CHECK(rec.tag == IndeterminateTag{1, 1});
        REQUIRE(rec.constraints.rows.size() == 1);
        CHECK(support_labels(rec, sys, 0) == std::vector<std::string>{"a", "t32"});
        CHECK(rec.chosen != Rational(1));
        CHECK(rec.chosen == Rational(-1));
    }
    SUBCASE("resulting columns and verification") {
        std::vector<Rational> values;
        for (const auto& [tag, value] : tr.representation.assignments) values.push_back(value);
        CHECK(values == rationals({1, -1, 1}));  // t21, t22, t32
        CHECK(tr.representation.matrix.column(0) == rationals({1, 1, 0}));
        CHECK(tr.representation.matrix.column(1) == rationals({1, -1, 1}));
        CHECK(check_representation(q, tr.representation.matrix, sys).pass);
    }
}

TEST_CASE("a tableau stripped of its look-ahead columns goes wrong") {
    SetSystem sys = lookahead_example();
    SplitResult split = split_partition(sys);
    Tableau<RationalField> tab = initial_tableau(q, sys, split);

    // broken variant: hide every unmerged indeterminate except the one being
    // merged, collect constraints from full-height bordered minors only (no
    // fallback to smaller certifying minors), and merge with the value that
    // stripped tableau suggests
    auto broken_step_one = [&](const Tableau<RationalField>& t, std::size_t l, std::size_t r) {
        ConstraintTable<RationalField> z;
        const std::size_t m = t.matrix.rows;
        std::vector<std::size_t> pool;
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            if (c != l && c != r) pool.push_back(c);
        if (m == 0 || pool.size() < m - 1) return z;
        std::vector<bool> take(pool.size(), false);
        std::fill(take.begin(), take.begin() + static_cast<std::ptrdiff_t>(m - 1), true);
        std::sort(take.begin(), take.end());
        do {
            std::vector<std::size_t> left{l}, right{r};
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (take[i]) {
                    left.push_back(pool[i]);
                    right.push_back(pool[i]);
                }
            Rational dl = determinant(q, column_select(q, t.matrix, left, true));
            Rational dr = determinant(q, column_select(q, t.matrix, right, true));
            if (!dl.is_zero() && !dr.is_zero()) z.rows.push_back({dl, dr, {}, {}});
        } while (std::next_permutation(take.begin(), take.end()));
        return z;
    };
    auto broken_merge = [&](Tableau<RationalField> t, const IndeterminateTag& tag) {
        Tableau<RationalField> visible = t;
        for (std::size_t c = visible.columns.size(); c-- > 0;) {
            const ColumnId& id = visible.columns[c];
            if (!id.is_ground() && !(id.set == tag.set && id.element == tag.element)) {
                visible.matrix.erase_column(c);
                visible.columns.erase(visible.columns.begin() + static_cast<std::ptrdiff_t>(c));
            }
        }
        std::size_t l = visible.find_column(ColumnId::ground_col(tag.element));
        std::size_t r = visible.find_column(ColumnId::indeterminate_col(tag));
        ConstraintTable<RationalField> z = broken_step_one(visible, l, r);
        Rational t_value = step_two_choose(q, z);
        // write the chosen value into the real tableau
        std::size_t real_l = t.find_column(ColumnId::ground_col(tag.element));
        std::size_t real_r = t.find_column(ColumnId::indeterminate_col(tag));
        for (std::size_t i = 0; i < t.matrix.rows; ++i)
            t.matrix.at(i, real_l) =
                q.add(t.matrix.at(i, real_l), q.mul(t_value, t.matrix.at(i, real_r)));
        t.matrix.erase_column(real_r);
        t.columns.erase(t.columns.begin() + static_cast<std::ptrdiff_t>(real_r));
        t.merged_log.emplace_back(tag, t_value);
        return t;
    };

    tab = broken_merge(std::move(tab), split.indeterminates[0]);  // t21 = 1 either way
    tab = broken_merge(std::move(tab), split.indeterminates[1]);  // t22 = 1, wrongly
    CHECK(tab.merged_log[1].second == Rational(1));

    // the intermediate matroid still expects {a, b} independent, but the
    // merged columns are now equal
    SetSystem intermediate = intermediate_system(sys, split, 2);
    Verdict verdict = check_representation(q, tab.matrix, intermediate);
    CHECK_FALSE(verdict.pass);
    REQUIRE(verdict.witness.has_value());
    CHECK(*verdict.witness == std::vector<std::size_t>{0, 1});

    // the honest pipeline keeps every intermediate stage faithful
    Tableau<RationalField> good = initial_tableau(q, sys, split);
    for (std::size_t k = 0; k < split.indeterminates.size(); ++k) {
        CHECK(check_representation(q, good.matrix, intermediate_system(sys, split, k)).pass);
        good = merge_one(q, std::move(good), split.indeterminates[k]);
    }
    CHECK(check_representation(q, good.matrix, intermediate_system(sys, split, 3)).pass);
}

TEST_CASE("field exhaustion carries the failing merge and a sufficient prime") {
    SetSystem sys = running_example();
    PrimeField f2(2);
    try {
        represent(f2, sys);
        FAIL("expected FieldExhausted");
    } catch (const FieldExhausted& e) {
        CHECK(e.constraint_rows == 1);
        CHECK(e.suggested_prime == 3);
        CHECK(e.has_tag);
        CHECK(e.tag_set == 2);
        CHECK(e.tag_element == 1);  // the t32 merge
    }
}

TEST_CASE("pruning changes neither the choice nor the outcome") {
    std::mt19937_64 gen(37);
    MergeOptions no_prune;
    no_prune.prune_duplicates = false;
    for (int trial = 0; trial < 40; ++trial) {
        SetSystem sys = random_system(gen, 6, 4);
        Representation<RationalField> pruned = represent(q, sys);
        Representation<RationalField> full = represent(q, sys, no_prune);
        CHECK(pruned.matrix == full.matrix);
        CHECK(pruned.assignments == full.assignments);
    }
}

TEST_CASE("represent is deterministic") {
    std::mt19937_64 gen(41);
    for (int trial = 0; trial < 10; ++trial) {
        SetSystem sys = random_system(gen, 8, 5);
        Representation<RationalField> first = represent(q, sys);
        Representation<RationalField> second = represent(q, sys);
        CHECK(first.matrix == second.matrix);
        CHECK(first.assignments == second.assignments);
    }
}

TEST_CASE("every pipeline value over Q stays integral") {
    std::mt19937_64 gen(43);
    for (int trial = 0; trial < 30; ++trial) {
        SetSystem sys = random_system(gen, 7, 4);
        TraceResult<RationalField> tr = trace(q, sys);
        for (const auto& rec : tr.iterations) {
            for (const Rational& e : rec.tableau.entries) CHECK(e.is_integer());
            for (const auto& row : rec.constraints.rows) {
                CHECK(row.det_left.is_integer());
                CHECK(row.det_right.is_integer());
            }
            CHECK(rec.chosen.is_integer());
        }
        for (const Rational& e : tr.representation.matrix.entries) CHECK(e.is_integer());
    }
}

TEST_CASE("chosen values avoid zero and the forbidden ratios") {
    std::mt19937_64 gen(47);
    for (int trial = 0; trial < 30; ++trial) {
        SetSystem sys = random_system(gen, 7, 4);
        TraceResult<RationalField> tr = trace(q, sys);
        for (const auto& rec : tr.iterations) {
            CHECK_FALSE(rec.chosen.is_zero());
            for (const auto& row : rec.constraints.rows)
                CHECK_FALSE((row.det_left + rec.chosen * row.det_right).is_zero());
        }
    }
}

TEST_CASE("nonsingular selections through L or R survive each merge") {
    std::mt19937_64 gen(53);
    for (int trial = 0; trial < 15; ++trial) {
        SetSystem sys = normalize(random_system(gen, 5, 4)).system;
        SplitResult split = split_partition(sys);
        Tableau<RationalField> tab = initial_tableau(q, sys, split);
        for (const IndeterminateTag& tag : split.indeterminates) {
            std::size_t l = tab.find_column(ColumnId::ground_col(tag.element));
            std::size_t r = tab.find_column(ColumnId::indeterminate_col(tag));
            Tableau<RationalField> before = tab;
            tab = merge_one(q, std::move(tab), tag);
            const Rational& chosen = tab.merged_log.back().second;

            const std::size_t m = before.matrix.rows;
            std::vector<std::size_t> pick(m);
            // exhaustive m-column selections using exactly one of L, R
            std::vector<std::size_t> pool;
            for (std::size_t c = 0; c < before.columns.size(); ++c)
                if (c != l && c != r) pool.push_back(c);
            if (pool.size() + 1 < m) continue;
            std::vector<std::size_t> comb(m - 1);
            for (std::size_t i = 0; i < m - 1; ++i) comb[i] = i;
            while (true) {
                for (std::size_t distinguished : {l, r}) {
                    std::vector<std::size_t> sel{distinguished};
                    for (std::size_t i : comb) sel.push_back(pool[i]);
                    Matrix<RationalField> before_sel =
                        column_select(q, before.matrix, sel, true);
                    if (determinant(q, before_sel).is_zero()) continue;
                    // map into the merged tableau: the distinguished column
                    // becomes v_L + t v_R, everything else is unchanged
                    Matrix<RationalField> after_sel = before_sel;
                    for (std::size_t i = 0; i < m; ++i)
                        after_sel.at(i, 0) =
                            before.matrix.at(i, l) + chosen * before.matrix.at(i, r);
                    CHECK_FALSE(determinant(q, after_sel).is_zero());
                }
                if (m == 1) break;
                std::size_t i = m - 1;
                while (i > 0 && comb[i - 1] == pool.size() - (m - 1) + (i - 1)) --i;
                if (i == 0) break;
                ++comb[i - 1];
                for (std::size_t k2 = i; k2 < m - 1; ++k2) comb[k2] = comb[k2 - 1] + 1;
            }
        }
    }
}

TEST_CASE("every intermediate stage represents its intermediate matroid") {
    std::mt19937_64 gen(59);
    for (int trial = 0; trial < 20; ++trial) {
        SetSystem sys = normalize(random_system(gen, 5, 4)).system;
        SplitResult split = split_partition(sys);
        Tableau<RationalField> tab = initial_tableau(q, sys, split);
        for (std::size_t k = 0; k <= split.indeterminates.size(); ++k) {
            SetSystem stage = intermediate_system(sys, split, k);
            CHECK(check_representation(q, tab.matrix, stage, 18).pass);
            if (k < split.indeterminates.size())
                tab = merge_one(q, std::move(tab), split.indeterminates[k]);
        }
    }
}

TEST_CASE("the enumeration budget aborts oversized merges unless forced") {
    // 6 sets over 35 elements, every incidence present: the first merge sees
    // C(208, 5) > 10^7 subsets
    std::vector<std::string> elements;
    for (int j = 0; j < 35; ++j) elements.push_back("e" + std::to_string(j));
    std::vector<std::pair<std::string, std::vector<std::string>>> sets;
    for (int i = 0; i < 6; ++i) sets.emplace_back("S" + std::to_string(i), elements);
    SetSystem sys = SetSystem::make(elements, sets);
    CHECK_THROWS_AS(represent(q, sys), BudgetExceeded);
}

TEST_CASE("rank-deficient tableaus still produce faithful representations") {
    // duplicate single-element sets force two tableau rows to coincide for
    // good once their private columns merge; constraints must then come from
    // smaller certifying minors or column collisions slip through
    SUBCASE("two pairs of duplicate sets") {
        SetSystem sys = SetSystem::make(
            {"a", "b"}, {{"A", {"a"}}, {"B", {"a"}}, {"C", {"b"}}, {"D", {"b"}}});
        Representation<RationalField> rep = represent(q, sys);
        CHECK(check_representation(q, rep.matrix, sys).pass);
    }
    SUBCASE("a mixed system that once collided columns e2 and e5") {
        SetSystem sys = SetSystem::make(
            {"e1", "e2", "e3", "e4", "e5"},
            {{"S2", {"e1"}}, {"S3", {"e2", "e5"}}, {"S4", {"e2", "e4", "e5"}}, {"S5", {"e1"}}});
        Representation<RationalField> rep = represent(q, sys);
        Verdict v = check_representation(q, rep.matrix, sys);
        CHECK(v.pass);
        CHECK(rep.matrix.column(1) != rep.matrix.column(4));
    }
}
