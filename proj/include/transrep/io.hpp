#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "transrep/matrix.hpp"
#include "transrep/merge.hpp"
#include "transrep/verify.hpp"

namespace transrep {

using OrderedJson = nlohmann::ordered_json;

namespace detail {

inline std::string align_table(const std::vector<std::string>& row_labels,
                               const std::vector<std::string>& col_labels,
                               const std::vector<std::vector<std::string>>& cells) {
    const std::size_t rows = cells.size();
    const std::size_t cols = col_labels.size();
    std::size_t label_width = 0;
    for (const auto& l : row_labels) label_width = std::max(label_width, l.size());
    std::vector<std::size_t> width(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        width[j] = col_labels[j].size();
        for (std::size_t i = 0; i < rows; ++i) width[j] = std::max(width[j], cells[i][j].size());
    }
    std::ostringstream out;
    auto pad_left = [&](const std::string& s, std::size_t w) {
        out << std::string(w - s.size(), ' ') << s;
    };
    out << std::string(label_width, ' ');
    for (std::size_t j = 0; j < cols; ++j) {
        out << "  ";
        pad_left(col_labels[j], width[j]);
    }
    out << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        out << row_labels[i] << std::string(label_width - row_labels[i].size(), ' ');
        for (std::size_t j = 0; j < cols; ++j) {
            out << "  ";
            pad_left(cells[i][j], width[j]);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace detail

/// Row/column-labelled text rendering of a matrix.
template <class F>
std::string format_matrix(const F& f, const Matrix<F>& m, const std::vector<std::string>& row_labels,
                          const std::vector<std::string>& col_labels) {
    std::vector<std::vector<std::string>> cells(m.rows, std::vector<std::string>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) cells[i][j] = f.str(m.at(i, j));
    return detail::align_table(row_labels, col_labels, cells);
}

inline std::string format_matrix(const IntegerMatrix& m, const std::vector<std::string>& row_labels,
                                 const std::vector<std::string>& col_labels) {
    std::vector<std::vector<std::string>> cells(m.rows, std::vector<std::string>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) cells[i][j] = m.at(i, j).str();
    return detail::align_table(row_labels, col_labels, cells);
}

/// {"rows", "cols", "labels", "entries"} with string-encoded exact values.
template <class F>
OrderedJson matrix_to_json(const F& f, const Matrix<F>& m,
                           const std::vector<std::string>& labels) {
    OrderedJson j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["labels"] = labels;
    OrderedJson entries = OrderedJson::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        OrderedJson row = OrderedJson::array();
        for (std::size_t c = 0; c < m.cols; ++c) row.push_back(f.str(m.at(i, c)));
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

inline OrderedJson matrix_to_json(const IntegerMatrix& m, const std::vector<std::string>& labels) {
    OrderedJson j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["labels"] = labels;
    j["scale"] = m.scale.str();
    OrderedJson entries = OrderedJson::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        OrderedJson row = OrderedJson::array();
        for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m.at(i, c).str());
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

/// Reads a matrix from either the JSON format emitted by matrix_to_json or a
/// plain text block (first line: column labels; then one row of values per
/// line). Entry values may be JSON strings or numbers.
template <class F>
std::pair<Matrix<F>, std::vector<std::string>> parse_matrix(const F& f, const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty matrix document");

    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> raw;
    if (text[first] == '{') {
        OrderedJson j;
        try {
            j = OrderedJson::parse(text);
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad matrix JSON: ") + e.what());
        }
        if (!j.contains("entries") || !j["entries"].is_array())
            throw ParseError("matrix JSON lacks an \"entries\" array");
        if (j.contains("labels"))
            labels = j["labels"].get<std::vector<std::string>>();
        for (const auto& row : j["entries"]) {
            std::vector<std::string> cells;
            for (const auto& v : row)
                cells.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            raw.push_back(std::move(cells));
        }
    } else {
        std::istringstream in(text);
        std::string line;
        bool have_labels = false;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::vector<std::string> tokens;
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (tokens.empty()) continue;
            if (!have_labels) {
                labels = tokens;
                have_labels = true;
            } else {
                raw.push_back(tokens);
            }
        }
        if (!have_labels) throw ParseError("matrix text lacks a label line");
    }

    const std::size_t cols = labels.size();
    Matrix<F> m(raw.size(), cols, f.zero());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].size() != cols)
            throw ParseError("matrix row " + std::to_string(i) + " has " +
                             std::to_string(raw[i].size()) + " entries, expected " +
                             std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = f.parse(raw[i][c]);
    }
    return {std::move(m), std::move(labels)};
}

/// {"status", "witness"?, "subsets_checked"} with witness as element names.
inline OrderedJson verdict_to_json(const Verdict& v, const std::vector<std::string>& element_names) {
    OrderedJson j;
    j["status"] = v.pass ? "pass" : "fail";
    if (v.witness) {
        OrderedJson names = OrderedJson::array();
        for (std::size_t idx : *v.witness) names.push_back(element_names[idx]);
        j["witness"] = std::move(names);
    }
    j["subsets_checked"] = v.subsets_checked;
    if (v.warning) j["warning"] = *v.warning;
    return j;
}

template <class F>
OrderedJson representation_to_json(const F& f, const Representation<F>& rep) {
    OrderedJson j = matrix_to_json(f, rep.matrix, rep.col_labels);
    j["row_labels"] = rep.row_labels;
    j["field"] = rep.field_name;
    OrderedJson assignments = OrderedJson::array();
    for (const auto& [tag, value] : rep.assignments) {
        OrderedJson a;
        a["label"] = indeterminate_label(tag);
        a["row"] = tag.set + 1;
        a["col"] = tag.element + 1;
        a["value"] = f.str(value);
        assignments.push_back(std::move(a));
    }
    j["assignments"] = std::move(assignments);
    j["dropped_sets"] = rep.dropped_sets;
    return j;
}

template <class F>
OrderedJson iteration_to_json(const F& f, const IterationRecord<F>& rec, const SetSystem& sys) {
    OrderedJson j;
    j["indeterminate"] = indeterminate_label(rec.tag);
    j["row"] = rec.tag.set + 1;
    j["col"] = rec.tag.element + 1;
    j["l_column"] = column_label(rec.tableau_columns[rec.l_col], sys);
    j["r_column"] = column_label(rec.tableau_columns[rec.r_col], sys);
    std::vector<std::string> labels;
    for (const ColumnId& id : rec.tableau_columns) labels.push_back(column_label(id, sys));
    j["tableau"] = matrix_to_json(f, rec.tableau, labels);
    OrderedJson constraints = OrderedJson::array();
    for (const auto& row : rec.constraints.rows) {
        OrderedJson c;
        OrderedJson support = OrderedJson::array();
        for (std::size_t col : row.support)
            support.push_back(column_label(rec.tableau_columns[col], sys));
        c["columns"] = std::move(support);
        c["det_l"] = f.str(row.det_left);
        c["det_r"] = f.str(row.det_right);
        if (row.row_support.size() < rec.tableau.rows) c["rows"] = row.row_support;
        constraints.push_back(std::move(c));
    }
    j["constraints"] = std::move(constraints);
    j["chosen"] = f.str(rec.chosen);
    return j;
}

/// Per-iteration text blocks: the tableau with L/R marks, the constraint
/// rows with their supporting columns, and the chosen value.
template <class F>
std::string format_trace_text(const F& f, const std::vector<IterationRecord<F>>& iterations,
                              const SetSystem& sys, const std::vector<std::string>& row_labels) {
    std::ostringstream out;
    for (std::size_t it = 0; it < iterations.size(); ++it) {
        const IterationRecord<F>& rec = iterations[it];
        std::vector<std::string> labels;
        for (std::size_t c = 0; c < rec.tableau_columns.size(); ++c) {
            std::string l = column_label(rec.tableau_columns[c], sys);
            if (c == rec.l_col) l += "[L]";
            if (c == rec.r_col) l += "[R]";
            labels.push_back(std::move(l));
        }
        out << "Iteration " << (it + 1) << ": indeterminate " << indeterminate_label(rec.tag)
            << " -> column " << sys.elements[rec.tag.element] << '\n';
        out << format_matrix(f, rec.tableau, row_labels, labels);
        if (rec.constraints.rows.empty()) {
            out << "  no constraints\n";
        } else {
            for (const auto& row : rec.constraints.rows) {
                out << "  (det_L, det_R) = (" << f.str(row.det_left) << ", "
                    << f.str(row.det_right) << ")  Y = {";
                for (std::size_t k = 0; k < row.support.size(); ++k) {
                    if (k) out << ", ";
                    out << column_label(rec.tableau_columns[row.support[k]], sys);
                }
                out << "}";
                if (row.row_support.size() < rec.tableau.rows) {
                    out << "  rows = {";
                    for (std::size_t k = 0; k < row.row_support.size(); ++k) {
                        if (k) out << ", ";
                        out << row_labels[row.row_support[k]];
                    }
                    out << "}";
                }
                out << "\n";
            }
        }
        out << "  chosen " << indeterminate_label(rec.tag) << " = " << f.str(rec.chosen) << "\n\n";
    }
    return out.str();
}

}  // namespace transrep
