#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "transrep/matrix.hpp"
#include "transrep/setsystem.hpp"

namespace transrep {

/// Identity of a tableau column: either a ground element or a not-yet-merged
/// indeterminate t_ij (set i, element j).
struct ColumnId {
    enum class Kind { ground, indeterminate };
    Kind kind = Kind::ground;
    std::size_t element = 0;
    std::size_t set = 0;  // meaningful for indeterminates only

    static ColumnId ground_col(std::size_t element) {
        return {Kind::ground, element, 0};
    }
    static ColumnId indeterminate_col(const IndeterminateTag& tag) {
        return {Kind::indeterminate, tag.element, tag.set};
    }
    bool is_ground() const { return kind == Kind::ground; }
    bool operator==(const ColumnId&) const = default;
};

/// "t<i><j>" with 1-based indices, e.g. t21; underscores separate multi-digit
/// indices (t10_2).
inline std::string indeterminate_label(const IndeterminateTag& tag) {
    std::string i = std::to_string(tag.set + 1), j = std::to_string(tag.element + 1);
    return (i.size() == 1 && j.size() == 1) ? "t" + i + j : "t" + i + "_" + j;
}

inline std::string column_label(const ColumnId& id, const SetSystem& sys) {
    if (id.is_ground()) return sys.elements[id.element];
    return indeterminate_label({id.set, id.element});
}

/// Working matrix of the merge: one column per ground element plus one
/// standard-basis column per unmerged indeterminate, in merge order.
template <class F>
struct Tableau {
    Matrix<F> matrix;
    std::vector<ColumnId> columns;
    std::vector<std::pair<IndeterminateTag, typename F::Element>> merged_log;

    std::size_t find_column(const ColumnId& id) const {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (columns[c] == id) return c;
        throw std::logic_error("column not present in tableau");
    }
};

template <class F>
Tableau<F> initial_tableau(const F& f, const SetSystem& sys, const SplitResult& split) {
    const std::size_t m = sys.set_count(), n = sys.ground_size();
    Tableau<F> tab;
    tab.matrix = Matrix<F>::zero(f, m, n + split.indeterminates.size());
    for (std::size_t j = 0; j < n; ++j) {
        tab.columns.push_back(ColumnId::ground_col(j));
        if (split.anchor_row[j]) tab.matrix.at(*split.anchor_row[j], j) = f.one();
    }
    for (std::size_t k = 0; k < split.indeterminates.size(); ++k) {
        const IndeterminateTag& tag = split.indeterminates[k];
        tab.columns.push_back(ColumnId::indeterminate_col(tag));
        tab.matrix.at(tag.set, n + k) = f.one();
    }
    return tab;
}

/// One row per admissible column collection Y: determinants of the bordered
/// matrices [v_L | Y] and [v_R | Y], both nonzero. `support` lists the
/// tableau positions of Y, ascending. When the tableau has full row rank the
/// bordered matrices are square and `row_support` is all rows; otherwise the
/// determinants are taken on the recorded certifying row subset.
template <class F>
struct ConstraintTable {
    struct Row {
        typename F::Element det_left;
        typename F::Element det_right;
        std::vector<std::size_t> support;
        std::vector<std::size_t> row_support;
    };
    std::vector<Row> rows;
};

struct MergeOptions {
    bool prune_duplicates = true;
    std::uint64_t enumeration_budget = 10'000'000;  // max column subsets per merge
    bool force = false;                             // proceed past the budget
};

/// C(n, r) capped at `cap` to avoid overflow.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t r,
                                     std::uint64_t cap = std::numeric_limits<std::uint64_t>::max()) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t result = 1;
    for (std::uint64_t k = 1; k <= r; ++k) {
        if (result > cap / (n - r + k)) return cap;
        result = result * (n - r + k) / k;
    }
    return std::min(result, cap);
}

namespace detail {

// Lexicographically first row subset whose rows restricted to `a` are
// linearly independent and of size a.cols; nullopt when rank(a) < a.cols.
// Greedy selection over an incremental echelon basis.
template <class F>
std::optional<std::vector<std::size_t>> lex_first_row_basis(const F& f, const Matrix<F>& a) {
    const std::size_t k = a.cols;
    std::vector<std::vector<typename F::Element>> basis;
    std::vector<std::size_t> pivot_col;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < a.rows && chosen.size() < k; ++i) {
        std::vector<typename F::Element> v(k);
        for (std::size_t j = 0; j < k; ++j) v[j] = a.at(i, j);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            std::size_t p = pivot_col[b];
            if (f.is_zero(v[p])) continue;
            typename F::Element factor = f.div(v[p], basis[b][p]);
            for (std::size_t j = 0; j < k; ++j) v[j] = f.sub(v[j], f.mul(factor, basis[b][j]));
        }
        std::size_t p = 0;
        while (p < k && f.is_zero(v[p])) ++p;
        if (p == k) continue;
        basis.push_back(std::move(v));
        pivot_col.push_back(p);
        chosen.push_back(i);
    }
    if (chosen.size() < k) return std::nullopt;
    return chosen;
}

template <class F>
Matrix<F> row_select(const F& f, const Matrix<F>& m, const std::vector<std::size_t>& rows) {
    Matrix<F> out(rows.size(), m.cols, f.zero());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out.at(i, j) = m.at(rows[i], j);
    return out;
}

}  // namespace detail

/// Enumerates the column collections Y, drawn from the columns other than L
/// and R, for which both bordered matrices [v_L | Y] and [v_R | Y] carry a
/// nonzero determinant pair, and records that pair. The bordered matrices
/// put the distinguished column first, then Y in ascending tableau order.
///
/// While the tableau has full row rank m this is exactly the enumeration of
/// (m-1)-subsets with both m x m bordered matrices nonsingular. When the row
/// rank r has dropped below m (possible once a set's last private column is
/// merged), m x m minors all vanish and constraints must come from r x r
/// minors instead: Y then ranges over (r-1)-subsets, and for each full-rank
/// bordered matrix the determinant pair is taken on its lexicographically
/// first certifying row subset, from the L and the R side. Either pair
/// forbids the value that would collapse an independent column selection.
///
/// Pruning skips candidate columns whose content repeats an already-kept
/// column (or the L/R columns): repeated columns can never appear together
/// in an independent selection, and the surviving pair set forbids the same
/// values. All unmerged indeterminate columns must be present in the
/// tableau; dropping them can admit values that break later merges.
template <class F>
ConstraintTable<F> step_one_constraints(const F& f, const Tableau<F>& tab, std::size_t l_col,
                                        std::size_t r_col, bool prune_duplicates = true) {
    const Matrix<F>& m = tab.matrix;
    ConstraintTable<F> table;
    if (m.rows == 0) return table;
    const std::size_t r = rank(f, m);
    if (r == 0) return table;
    const bool full_rank = (r == m.rows);

    std::vector<std::size_t> all_rows(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) all_rows[i] = i;

    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < m.cols; ++c) {
        if (c == l_col || c == r_col) continue;
        if (prune_duplicates) {
            if (columns_equal(f, m, c, l_col) || columns_equal(f, m, c, r_col)) continue;
            bool repeated = false;
            for (std::size_t kept : candidates)
                if (columns_equal(f, m, c, kept)) {
                    repeated = true;
                    break;
                }
            if (repeated) continue;
        }
        candidates.push_back(c);
    }

    const std::size_t need = r - 1;
    if (candidates.size() < need) return table;

    std::vector<std::size_t> pick(need);
    for (std::size_t i = 0; i < need; ++i) pick[i] = i;
    Matrix<F> left(m.rows, r, f.zero());
    Matrix<F> right(m.rows, r, f.zero());
    auto fill = [&](Matrix<F>& bordered, std::size_t first_col) {
        for (std::size_t i = 0; i < m.rows; ++i) bordered.at(i, 0) = m.at(i, first_col);
        for (std::size_t y = 0; y < need; ++y)
            for (std::size_t i = 0; i < m.rows; ++i)
                bordered.at(i, y + 1) = m.at(i, candidates[pick[y]]);
    };
    while (true) {
        fill(left, l_col);
        fill(right, r_col);
        std::vector<std::size_t> support;
        support.reserve(need);
        for (std::size_t y : pick) support.push_back(candidates[y]);

        if (full_rank) {
            typename F::Element det_l = determinant(f, left);
            if (!f.is_zero(det_l)) {
                typename F::Element det_r = determinant(f, right);
                if (!f.is_zero(det_r))
                    table.rows.push_back(
                        {std::move(det_l), std::move(det_r), std::move(support), all_rows});
            }
        } else {
            auto rho_l = detail::lex_first_row_basis(f, left);
            if (rho_l) {
                typename F::Element det_l = determinant(f, detail::row_select(f, left, *rho_l));
                typename F::Element det_r = determinant(f, detail::row_select(f, right, *rho_l));
                if (!f.is_zero(det_r))
                    table.rows.push_back({std::move(det_l), std::move(det_r), support, *rho_l});
            }
            auto rho_r = detail::lex_first_row_basis(f, right);
            if (rho_r && rho_r != rho_l) {
                typename F::Element det_l = determinant(f, detail::row_select(f, left, *rho_r));
                if (!f.is_zero(det_l)) {
                    typename F::Element det_r =
                        determinant(f, detail::row_select(f, right, *rho_r));
                    table.rows.push_back(
                        {std::move(det_l), std::move(det_r), std::move(support), *rho_r});
                }
            }
        }
        if (need == 0) break;
        // next combination in lexicographic order
        std::size_t i = need;
        while (i > 0 && pick[i - 1] == candidates.size() - need + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t k = i; k < need; ++k) pick[k] = pick[k - 1] + 1;
    }
    return table;
}

/// First candidate t of the field's stream with det_L + t*det_R nonzero for
/// every constraint row. The stream never yields zero. Throws FieldExhausted
/// when a finite field runs out of candidates.
template <class F>
typename F::Element step_two_choose(const F& f, const ConstraintTable<F>& z) {
    std::optional<std::size_t> count = f.candidate_count();
    for (std::size_t k = 0; !count || k < *count; ++k) {
        typename F::Element t = f.candidate(k);
        bool admissible = true;
        for (const auto& row : z.rows)
            if (f.is_zero(f.add(row.det_left, f.mul(t, row.det_right)))) {
                admissible = false;
                break;
            }
        if (admissible) return t;
    }
    std::uint64_t suggested = next_prime_greater(z.rows.size() + 1);
    throw FieldExhausted("field " + f.name() + " exhausted: all " + std::to_string(*count) +
                             " nonzero candidates are forbidden by " +
                             std::to_string(z.rows.size()) +
                             " constraint row(s); any prime p > " +
                             std::to_string(z.rows.size() + 1) +
                             " suffices (suggested: " + std::to_string(suggested) + ")",
                         z.rows.size(), suggested);
}

namespace detail {

template <class F>
void check_budget(const Tableau<F>& tab, const MergeOptions& opts) {
    if (tab.matrix.rows == 0) return;
    std::uint64_t required =
        binomial_capped(tab.matrix.cols >= 2 ? tab.matrix.cols - 2 : 0, tab.matrix.rows - 1);
    if (required > opts.enumeration_budget && !opts.force)
        throw BudgetExceeded(required, opts.enumeration_budget);
}

}  // namespace detail

/// Merges one indeterminate: chooses t from the constraint table, replaces
/// the ground column v_L by v_L + t * v_R and deletes the indeterminate
/// column. Equivalent to writing t into entry (set, element).
template <class F>
Tableau<F> merge_one(const F& f, Tableau<F> tab, const IndeterminateTag& tag,
                     const MergeOptions& opts = {}) {
    std::size_t l = tab.find_column(ColumnId::ground_col(tag.element));
    std::size_t r = tab.find_column(ColumnId::indeterminate_col(tag));
    detail::check_budget(tab, opts);
    ConstraintTable<F> z = step_one_constraints(f, tab, l, r, opts.prune_duplicates);
    typename F::Element t;
    try {
        t = step_two_choose(f, z);
    } catch (const FieldExhausted& e) {
        FieldExhausted tagged("merge of " + indeterminate_label(tag) + ": " + e.what(),
                              e.constraint_rows, e.suggested_prime);
        tagged.has_tag = true;
        tagged.tag_set = tag.set;
        tagged.tag_element = tag.element;
        throw tagged;
    }
    for (std::size_t i = 0; i < tab.matrix.rows; ++i)
        tab.matrix.at(i, l) = f.add(tab.matrix.at(i, l), f.mul(t, tab.matrix.at(i, r)));
    tab.matrix.erase_column(r);
    tab.columns.erase(tab.columns.begin() + static_cast<std::ptrdiff_t>(r));
    tab.merged_log.emplace_back(tag, std::move(t));
    return tab;
}

/// Final matrix over the field, column-indexed by ground elements, plus the
/// value assigned to each indeterminate.
template <class F>
struct Representation {
    Matrix<F> matrix;
    std::vector<std::string> row_labels;  // set names after normalization
    std::vector<std::string> col_labels;  // element names
    std::vector<std::pair<IndeterminateTag, typename F::Element>> assignments;
    std::vector<std::string> dropped_sets;
    std::string field_name;
};

/// Snapshot of one merge iteration, taken before the merge is applied.
template <class F>
struct IterationRecord {
    IndeterminateTag tag;
    Matrix<F> tableau;
    std::vector<ColumnId> tableau_columns;
    std::size_t l_col = 0;
    std::size_t r_col = 0;
    ConstraintTable<F> constraints;
    typename F::Element chosen;
};

template <class F>
struct TraceResult {
    std::vector<IterationRecord<F>> iterations;
    Representation<F> representation;
};

namespace detail {

template <class F>
Representation<F> run_merge(const F& f, const SetSystem& sys, const MergeOptions& opts,
                            std::vector<IterationRecord<F>>* records) {
    NormalizeResult norm = normalize(sys);
    const SetSystem& s = norm.system;
    SplitResult split = split_partition(s);
    Tableau<F> tab = initial_tableau(f, s, split);

    for (const IndeterminateTag& tag : split.indeterminates) {
        if (records) {
            std::size_t l = tab.find_column(ColumnId::ground_col(tag.element));
            std::size_t r = tab.find_column(ColumnId::indeterminate_col(tag));
            detail::check_budget(tab, opts);
            ConstraintTable<F> z = step_one_constraints(f, tab, l, r, opts.prune_duplicates);
            IterationRecord<F> rec{tag, tab.matrix, tab.columns, l, r, z, f.zero()};
            tab = merge_one(f, std::move(tab), tag, opts);
            rec.chosen = tab.merged_log.back().second;
            records->push_back(std::move(rec));
        } else {
            tab = merge_one(f, std::move(tab), tag, opts);
        }
    }

    Representation<F> rep;
    rep.matrix = std::move(tab.matrix);
    for (const NamedSet& set : s.sets) rep.row_labels.push_back(set.name);
    rep.col_labels = s.elements;
    rep.assignments = std::move(tab.merged_log);
    rep.dropped_sets = std::move(norm.dropped);
    rep.field_name = f.name();

    // Mirsky-Perfect pattern: support equals the incidence support and every
    // supported entry is nonzero.
    IncidenceMatrix inc = incidence(s);
    for (std::size_t i = 0; i < rep.matrix.rows; ++i)
        for (std::size_t j = 0; j < rep.matrix.cols; ++j)
            if ((inc.at(i, j) != 0) == f.is_zero(rep.matrix.at(i, j)))
                throw std::logic_error("representation support differs from incidence support");
    return rep;
}

}  // namespace detail

/// Runs the full merge: split the system into a partition plus indeterminate
/// columns, then merge every indeterminate back in order. Deterministic for
/// a fixed field and options.
template <class F>
Representation<F> represent(const F& f, const SetSystem& sys, const MergeOptions& opts = {}) {
    return detail::run_merge<F>(f, sys, opts, nullptr);
}

/// As represent, but additionally records every iteration's tableau,
/// constraint table and chosen value.
template <class F>
TraceResult<F> trace(const F& f, const SetSystem& sys, const MergeOptions& opts = {}) {
    TraceResult<F> result;
    result.representation = detail::run_merge<F>(f, sys, opts, &result.iterations);
    return result;
}

/// The set system whose transversal matroid the tableau represents after the
/// first `merged_count` indeterminates have been merged: ground elements plus
/// one pseudo-element per unmerged indeterminate. Set i contains element j if
/// j is anchored at i or tag (i, j) is already merged; it contains the
/// pseudo-element of every unmerged tag in row i.
SetSystem intermediate_system(const SetSystem& normalized, const SplitResult& split,
                              std::size_t merged_count);

}  // namespace transrep
