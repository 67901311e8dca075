#include "transrep/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "transrep/fields.hpp"
#include "transrep/io.hpp"
#include "transrep/merge.hpp"
#include "transrep/setsystem.hpp"
#include "transrep/transversal.hpp"
#include "transrep/verify.hpp"

namespace transrep {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kFieldExhausted = 2;
constexpr int kVerifyFailed = 3;

struct FieldSpec {
    bool rational = true;
    std::uint64_t p = 0;
};

FieldSpec parse_field_spec(const std::string& text) {
    if (text == "Q" || text == "q") return {};
    if (text.rfind("gf:", 0) == 0) {
        FieldSpec spec;
        spec.rational = false;
        try {
            spec.p = std::stoull(text.substr(3));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad field '" + text + "' (use Q or gf:<p>)");
        }
        return spec;
    }
    throw std::invalid_argument("bad field '" + text + "' (use Q or gf:<p>)");
}

template <class Fn>
int with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.rational) return fn(RationalField{});
    return fn(PrimeField(spec.p));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> names;
    std::string current;
    std::istringstream in(csv);
    while (std::getline(in, current, ','))
        if (!current.empty()) names.push_back(current);
    return names;
}

struct RepresentArgs {
    std::string input_path;
    std::string field = "Q";
    std::string trace_mode;  // "", "text" or "json"
    bool prune = true;
    bool integer_scale = false;
    bool force = false;
    bool json = false;
};

template <class F>
int run_represent(const F& f, const RepresentArgs& args, const SetSystem& sys, std::ostream& out) {
    MergeOptions opts;
    opts.prune_duplicates = args.prune;
    opts.force = args.force;

    const SetSystem norm = normalize(sys).system;
    std::vector<IterationRecord<F>> iterations;
    Representation<F> rep;
    if (args.trace_mode.empty()) {
        rep = represent(f, sys, opts);
    } else {
        TraceResult<F> tr = trace(f, sys, opts);
        rep = std::move(tr.representation);
        iterations = std::move(tr.iterations);
    }

    if (args.json) {
        OrderedJson doc = representation_to_json(f, rep);
        if constexpr (std::is_same_v<F, RationalField>) {
            if (args.integer_scale) {
                IntegerMatrix scaled = lcm_denominator_scale(rep.matrix);
                doc["entries"] = matrix_to_json(scaled, rep.col_labels)["entries"];
                doc["scale"] = scaled.scale.str();
            }
        }
        if (args.trace_mode == "json" || args.trace_mode == "text") {
            OrderedJson its = OrderedJson::array();
            for (const auto& rec : iterations) its.push_back(iteration_to_json(f, rec, norm));
            doc["iterations"] = std::move(its);
        }
        out << doc.dump(2) << '\n';
        return kOk;
    }

    if (args.trace_mode == "text") {
        out << format_trace_text(f, iterations, norm, rep.row_labels);
    } else if (args.trace_mode == "json") {
        OrderedJson its = OrderedJson::array();
        for (const auto& rec : iterations) its.push_back(iteration_to_json(f, rec, norm));
        out << its.dump(2) << '\n';
    }
    for (const std::string& name : rep.dropped_sets)
        out << "dropped empty set: " << name << '\n';
    if constexpr (std::is_same_v<F, RationalField>) {
        if (args.integer_scale) {
            IntegerMatrix scaled = lcm_denominator_scale(rep.matrix);
            out << format_matrix(scaled, rep.row_labels, rep.col_labels);
            out << "scale: " << scaled.scale.str() << '\n';
            return kOk;
        }
    }
    out << format_matrix(f, rep.matrix, rep.row_labels, rep.col_labels);
    return kOk;
}

struct VerifyArgs {
    std::string input_path;
    std::string matrix_path;
    std::string field = "Q";
    std::int64_t samples = -1;  // -1: exhaustive
    std::uint64_t seed = 0;
};

template <class F>
int run_verify(const F& f, const VerifyArgs& args, const SetSystem& sys, std::ostream& out,
               std::ostream& err) {
    auto [matrix, labels] = parse_matrix(f, read_file(args.matrix_path));
    if (matrix.cols != sys.ground_size()) {
        err << "error: matrix has " << matrix.cols << " columns but the system has "
            << sys.ground_size() << " elements\n";
        return kInputError;
    }
    if (!labels.empty() && labels != sys.elements) {
        err << "error: matrix column labels do not match the system's elements\n";
        return kInputError;
    }
    Verdict verdict = args.samples < 0
                          ? check_representation(f, matrix, sys)
                          : check_representation_sampled(
                                f, matrix, sys, static_cast<std::size_t>(args.samples), args.seed);
    out << verdict_to_json(verdict, sys.elements).dump(2) << '\n';
    return verdict.pass ? kOk : kVerifyFailed;
}

int run_rank(const std::string& input_path, bool subset_given, const std::string& subset_csv,
             bool witness, std::ostream& out) {
    SetSystem sys = parse_set_system(read_file(input_path));
    std::vector<std::size_t> subset;
    if (!subset_given) {
        for (std::size_t j = 0; j < sys.ground_size(); ++j) subset.push_back(j);
    } else {
        for (const std::string& name : split_names(subset_csv)) {
            auto idx = sys.element_index(name);
            if (!idx) throw std::invalid_argument("unknown element '" + name + "'");
            subset.push_back(*idx);
        }
    }
    Matching matching = max_matching(sys, subset);
    out << "rank: " << matching.size() << '\n';
    if (witness)
        for (const auto& [element, set] : matching.pairs)
            out << sys.elements[element] << " -> " << sys.sets[set].name << '\n';
    return kOk;
}

struct UniformArgs {
    std::size_t k = 0;
    std::size_t n = 0;
    std::string field = "Q";
    bool json = false;
};

int run_uniform(const UniformArgs& args, std::ostream& out, std::ostream& err) {
    SetSystem sys = uniform_system(args.k, args.n);
    if (args.k > args.n)
        err << "warning: k > n, the matroid rank saturates at " << args.n << '\n';
    std::vector<std::string> row_labels;
    for (const NamedSet& s : sys.sets) row_labels.push_back(s.name);

    FieldSpec spec = parse_field_spec(args.field);
    if (spec.rational) {
        IntegerMatrix m = represent_uniform(args.k, args.n);
        if (args.json)
            out << matrix_to_json(m, sys.elements).dump(2) << '\n';
        else
            out << format_matrix(m, row_labels, sys.elements);
        return kOk;
    }
    return with_field(spec, [&](const auto& f) {
        Representation rep = represent(f, sys);
        if (args.json)
            out << representation_to_json(f, rep).dump(2) << '\n';
        else
            out << format_matrix(f, rep.matrix, rep.row_labels, rep.col_labels);
        return kOk;
    });
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"matrix representations of transversal matroids over exact fields"};
    app.require_subcommand(1);

    RepresentArgs rep_args;
    CLI::App* rep = app.add_subcommand("represent",
                                       "build a representation of the transversal matroid");
    rep->add_option("input", rep_args.input_path, "set system file (JSON or dense 0/1 text)")
        ->required();
    rep->add_option("--field", rep_args.field, "Q (default) or gf:<p>");
    auto* trace_opt =
        rep->add_option("--trace", rep_args.trace_mode, "emit the per-merge trace (text or json)")
            ->expected(0, 1);
    rep->add_flag("--prune,!--no-prune", rep_args.prune,
                  "skip repeated tableau columns during constraint enumeration (default on)");
    rep->add_flag("--integer-scale", rep_args.integer_scale,
                  "clear denominators via their lcm (rationals only)");
    rep->add_flag("--force", rep_args.force, "proceed past the enumeration budget");
    rep->add_flag("--json", rep_args.json, "machine-readable output");

    VerifyArgs ver_args;
    CLI::App* ver = app.add_subcommand(
        "verify", "check a matrix against the matching oracle on every column subset");
    ver->add_option("input", ver_args.input_path, "set system file")->required();
    ver->add_option("matrix", ver_args.matrix_path, "matrix file (JSON or labelled text)")
        ->required();
    ver->add_option("--field", ver_args.field, "Q (default) or gf:<p>");
    ver->add_option("--samples", ver_args.samples,
                    "check this many seeded random subsets instead of all of them");
    ver->add_option("--seed", ver_args.seed, "sampling seed (default 0)");

    std::string rank_input, rank_subset;
    bool rank_witness = false;
    CLI::App* rnk = app.add_subcommand("rank", "matroid rank of a subset via maximum matching");
    rnk->add_option("input", rank_input, "set system file")->required();
    auto* subset_opt =
        rnk->add_option("--subset", rank_subset, "comma-separated element names (default: all)");
    rnk->add_flag("--witness", rank_witness, "print the matching");

    UniformArgs uni_args;
    CLI::App* uni = app.add_subcommand("uniform", "integer representation of a uniform matroid");
    uni->add_option("k", uni_args.k, "number of set copies (target rank)")->required();
    uni->add_option("n", uni_args.n, "ground set size")->required();
    uni->add_option("--field", uni_args.field, "Q (default) or gf:<p>");
    uni->add_flag("--json", uni_args.json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (rep->parsed()) {
            if (trace_opt->count() > 0 && rep_args.trace_mode.empty()) rep_args.trace_mode = "text";
            if (!rep_args.trace_mode.empty() && rep_args.trace_mode != "text" &&
                rep_args.trace_mode != "json")
                throw std::invalid_argument("--trace must be text or json");
            FieldSpec spec = parse_field_spec(rep_args.field);
            if (rep_args.integer_scale && !spec.rational)
                throw std::invalid_argument("--integer-scale applies to --field=Q only");
            SetSystem sys = parse_set_system(read_file(rep_args.input_path));
            return with_field(spec, [&](const auto& f) {
                return run_represent(f, rep_args, sys, out);
            });
        }
        if (ver->parsed()) {
            FieldSpec spec = parse_field_spec(ver_args.field);
            SetSystem sys = parse_set_system(read_file(ver_args.input_path));
            return with_field(spec, [&](const auto& f) {
                return run_verify(f, ver_args, sys, out, err);
            });
        }
        if (rnk->parsed())
            return run_rank(rank_input, subset_opt->count() > 0, rank_subset, rank_witness, out);
        if (uni->parsed()) return run_uniform(uni_args, out, err);
    } catch (const FieldExhausted& e) {
        err << "error: " << e.what() << '\n';
        return kFieldExhausted;
    } catch (const GroundSetTooLarge& e) {
        err << "error: " << e.what() << " (use --samples for a sampled check)\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace transrep
