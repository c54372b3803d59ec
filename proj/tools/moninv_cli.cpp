#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "moninv/json_io.hpp"

/**
 * moninv: arithmetical invariants of finitely generated reduced commutative
 * cancellative monoids — atoms, factorizations, relation atoms, elasticity,
 * catenary-type degrees, tame degree, and delta sets.
 *
 * Exit codes: 0 success, 2 input or schema error, 3 resource limit hit,
 * 4 internal invariant violation (always a bug).
 */
namespace {

using moninv::json;

struct CommonOpts {
    std::string output;
    std::string format = "json";
    int threads = 0;
    long long node_limit = 0;
    bool timing = false;
};

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--output", c.output, "write the report to this file instead of stdout");
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--threads", c.threads,
                    "worker threads (0 = hardware default); results are identical "
                    "for every thread count");
    sub->add_option("--node-limit", c.node_limit, "search node budget (0 = default)");
    sub->add_flag("--timing", c.timing, "include wall-clock milliseconds in the report");
}

moninv::Limits limits_of(const CommonOpts& c) {
    moninv::Limits lim;
    lim.threads = c.threads;
    if (c.node_limit > 0) lim.node_limit = c.node_limit;
    return lim;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw moninv::InputError("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw moninv::InputError("malformed JSON in " + path + ": " + e.what());
    }
}

json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw moninv::InputError("malformed JSON in " + what + ": " + e.what());
    }
}

std::vector<long long> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoll(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw moninv::InputError("option " + what + ": \"" + tok + "\" is not an integer");
        }
    }
    if (out.empty()) throw moninv::InputError("option " + what + " must not be empty");
    return out;
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(c.output);
        if (!out) throw moninv::InputError("cannot open output file: " + c.output);
        out << text;
        if (text.empty() || text.back() != '\n') out << '\n';
    }
}

void emit_json(const CommonOpts& c, const json& j) { emit(c, j.dump(2)); }

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

moninv::AbelianGroup group_from_spec(const json& j) {
    if (j.is_array()) return moninv::AbelianGroup(moninv::jio::as_int_array(j, "group"));
    if (j.is_object() && j.contains("group"))
        return moninv::AbelianGroup(moninv::jio::as_int_array(j["group"], "group"));
    throw moninv::InputError("expected a group spec: a JSON array of invariant factors "
                             "or an object with a \"group\" field");
}

// ---------------------------------------------------------------- atoms-g

struct AtomsGOpts {
    CommonOpts common;
    std::string input;
    std::string group;
};

void run_atoms_g(const AtomsGOpts& o) {
    Timer timer;
    moninv::AbelianGroup g = o.group.empty()
                                 ? group_from_spec(read_json_file(o.input))
                                 : moninv::AbelianGroup(parse_int_list(o.group, "--group"));
    moninv::Limits lim = limits_of(o.common);
    std::vector<moninv::Sequence> atoms = moninv::atoms_of_block_monoid(g, lim);
    json out;
    out["group"] = g.factors();
    json ja = json::array();
    for (const moninv::Sequence& s : atoms) {
        json entry = json::array();
        for (long long e = 0; e < g.order(); ++e)
            if (s[static_cast<std::size_t>(e)] > 0) {
                json item;
                item["element"] = g.rep(e);
                item["mult"] = s[static_cast<std::size_t>(e)];
                entry.push_back(item);
            }
        ja.push_back(entry);
    }
    out["atoms"] = ja;
    out["davenport"] = moninv::davenport(g, lim);
    out["timing"] = o.common.timing ? json(timer.ms()) : json(nullptr);
    emit_json(o.common, out);
}

// ---------------------------------------------------------------- tblock

struct TBlockOpts {
    CommonOpts common;
    std::string input;
    bool strip = false;
};

void run_tblock(const TBlockOpts& o) {
    moninv::Limits lim = limits_of(o.common);
    json j = read_json_file(o.input);
    moninv::ParsedInput in = moninv::parse_input(j, lim);
    if (in.kind != "tblock")
        throw moninv::InputError("subcommand tblock expects an input with kind \"tblock\"");
    moninv::Presentation p = in.presentation;
    if (o.strip) p = moninv::strip_primes(p).p;
    emit_json(o.common, moninv::presentation_to_json(p));
}

// ---------------------------------------------------------------- hilbert

struct HilbertOpts {
    CommonOpts common;
    std::string input;
};

void run_hilbert(const HilbertOpts& o) {
    Timer timer;
    json j = read_json_file(o.input);
    moninv::DioSystem sys = moninv::dio_system_from_json(j);
    moninv::HilbertOptions opts;
    opts.bound = moninv::bound_from_json(j);
    opts.limits = limits_of(o.common);
    moninv::MinimalSolutionSet sols = moninv::hilbert_minimal_solutions(sys, opts);
    json out;
    out["solutions"] = sols.solutions;
    out["complete"] = sols.complete;
    out["bound"] = sols.bound_used ? json(*sols.bound_used) : json(nullptr);
    out["timing"] = o.common.timing ? json(timer.ms()) : json(nullptr);
    emit_json(o.common, out);
}

// ---------------------------------------------------------------- relations

struct RelationsOpts {
    CommonOpts common;
    std::string input;
    std::string kind = "plain";
    long long bound = 0;
    bool raw = false;
};

void run_relations(const RelationsOpts& o) {
    Timer timer;
    moninv::Limits lim = limits_of(o.common);
    moninv::ParsedInput in = moninv::parse_input(read_json_file(o.input), lim);
    moninv::RelationKind kind = o.kind == "plain"      ? moninv::RelationKind::plain
                                : o.kind == "monotone" ? moninv::RelationKind::monotone
                                                       : moninv::RelationKind::equal;
    std::optional<long long> bound;
    if (o.bound > 0) bound = o.bound;
    moninv::RelationAtoms atoms =
        o.raw ? moninv::relation_atoms(in.presentation, kind, bound, lim)
              : moninv::reduced_relation_atoms(in.presentation, kind, bound, lim);
    json out;
    out["kind"] = o.kind;
    out["reduced"] = !o.raw;
    out["count"] = atoms.pairs.size();
    out["complete"] = atoms.complete;
    out["bound"] = atoms.bound_used ? json(*atoms.bound_used) : json(nullptr);
    json pairs = json::array();
    for (const moninv::RelationPair& pr : atoms.pairs) {
        json e;
        e["x"] = pr.x;
        e["y"] = pr.y;
        pairs.push_back(e);
    }
    out["pairs"] = pairs;
    out["timing"] = o.common.timing ? json(timer.ms()) : json(nullptr);
    emit_json(o.common, out);
}

// ---------------------------------------------------------------- factorize

struct FactorizeOpts {
    CommonOpts common;
    std::string input;
    std::string element;
};

void run_factorize(const FactorizeOpts& o) {
    Timer timer;
    moninv::Limits lim = limits_of(o.common);
    moninv::ParsedInput in = moninv::parse_input(read_json_file(o.input), lim);
    json je = parse_json_text(o.element, "--element");
    moninv::Vec a = moninv::jio::as_int_array(je, "--element");
    std::vector<moninv::Factorization> zs = moninv::factorizations_of(in.presentation, a, lim);
    json out;
    out["element"] = a;
    out["factorizations"] = zs;
    std::set<long long> lens;
    for (const auto& z : zs) lens.insert(moninv::fact_length(z));
    out["lengths"] = std::vector<long long>(lens.begin(), lens.end());
    std::vector<long long> delta;
    long long prev = -1;
    for (long long l : lens) {
        if (prev >= 0 && l - prev > 0) delta.push_back(l - prev);
        prev = l;
    }
    std::sort(delta.begin(), delta.end());
    delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
    out["delta"] = delta;
    out["r_classes"] = moninv::r_classes(zs);
    out["mu"] = moninv::mu_value(zs);
    out["mu_eq"] = moninv::mu_eq_value(zs);
    out["mu_adj"] = moninv::mu_adj_value(zs);
    out["timing"] = o.common.timing ? json(timer.ms()) : json(nullptr);
    emit_json(o.common, out);
}

// ---------------------------------------------------------------- invariants

struct InvariantsOpts {
    CommonOpts common;
    std::string input;
    std::string compute = "all";
    std::string bound;  // "", "auto", or an integer
    std::string m_values = "2";
    std::string elasticity_mode = "auto";
};

moninv::InvariantSelection selection_from(const std::string& compute) {
    moninv::InvariantSelection sel;
    if (compute == "all" || compute.empty()) return sel;
    sel = moninv::InvariantSelection{false, false, false, false, false, false, false, false};
    std::stringstream ss(compute);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "elasticity" || tok == "rho")
            sel.elasticity = true;
        else if (tok == "catenary" || tok == "c")
            sel.catenary = true;
        else if (tok == "ceq" || tok == "equal_catenary")
            sel.equal_catenary = true;
        else if (tok == "cadj" || tok == "adjacent_catenary")
            sel.adjacent_catenary = true;
        else if (tok == "cmon" || tok == "monotone_catenary")
            sel.monotone_catenary = true;
        else if (tok == "madj" || tok == "m_adjacent")
            sel.m_adjacent = true;
        else if (tok == "tame" || tok == "t")
            sel.tame = true;
        else if (tok == "delta")
            sel.delta = true;
        else if (tok == "all")
            return moninv::InvariantSelection{};
        else
            throw moninv::InputError("option --compute: unknown invariant \"" + tok + "\"");
    }
    return sel;
}

std::string render_text_report(const moninv::InvariantReport& rep,
                               const moninv::InvariantSelection& sel) {
    std::ostringstream os;
    auto flag = [](bool exact) { return exact ? " (exact)" : " (lower bound)"; };
    if (sel.elasticity)
        os << "elasticity = " << rep.elasticity.str() << flag(rep.elasticity_exact) << "\n";
    if (sel.catenary) os << "catenary = " << rep.catenary << flag(rep.catenary_exact) << "\n";
    if (sel.equal_catenary)
        os << "equal catenary = " << rep.equal_catenary << flag(rep.equal_catenary_exact) << "\n";
    if (sel.adjacent_catenary)
        os << "adjacent catenary = " << rep.adjacent_catenary
           << flag(rep.adjacent_catenary_exact) << "\n";
    if (sel.monotone_catenary)
        os << "monotone catenary = " << rep.monotone_catenary
           << flag(rep.monotone_catenary_exact) << "\n";
    if (sel.m_adjacent)
        for (const auto& [m, value] : rep.m_adjacent)
            os << "m-adjacent catenary (m=" << m << ") = " << value
               << flag(rep.m_adjacent_exact) << "\n";
    if (sel.tame)
        os << "tame degree = " << rep.tame_degree << flag(!rep.tame_is_lower_bound) << "\n";
    if (sel.delta) {
        os << "delta set = {";
        for (std::size_t i = 0; i < rep.delta.size(); ++i)
            os << (i ? ", " : "") << rep.delta[i];
        os << "}" << (rep.delta_is_partial ? " (partial)" : " (exact)") << "\n";
    }
    os << "reduced relation atoms = " << rep.relation_atom_count << "\n";
    if (rep.bound_used) os << "bound = " << *rep.bound_used << "\n";
    return os.str();
}

void run_invariants(const InvariantsOpts& o) {
    Timer timer;
    moninv::Limits lim = limits_of(o.common);
    json j = read_json_file(o.input);
    moninv::ParsedInput in = moninv::parse_input(j, lim);

    moninv::InvariantOptions opts;
    opts.limits = lim;
    opts.m_values = parse_int_list(o.m_values, "--m");
    bool auto_bound = false;
    if (o.bound == "auto") {
        if (!in.group || !in.tspec)
            throw moninv::InputError("--bound auto needs a tblock input: the bound is "
                                     "derived from the T-monoid and the group");
        opts.bound = moninv::tblock_meta(*in.group, *in.tspec, lim).bound;
        opts.bound_certified = true;
        auto_bound = true;
    } else if (!o.bound.empty()) {
        opts.bound = parse_int_list(o.bound, "--bound")[0];
        if (*opts.bound <= 0) throw moninv::InputError("option --bound must be positive");
    }
    if (o.elasticity_mode == "atoms")
        opts.elasticity_mode = moninv::ElasticityMode::atoms;
    else if (o.elasticity_mode == "support")
        opts.elasticity_mode = moninv::ElasticityMode::support;

    moninv::InvariantSelection sel = selection_from(o.compute);
    moninv::InvariantReport rep = moninv::compute_invariants(in.presentation, sel, opts);
    if (o.common.format == "text") {
        emit(o.common, render_text_report(rep, sel));
        return;
    }
    std::optional<long long> timing;
    if (o.common.timing) timing = timer.ms();
    emit_json(o.common, moninv::report_to_json(in.raw, rep, sel, opts.bound, auto_bound, timing));
}

// ---------------------------------------------------------------- numon

struct NumonOpts {
    CommonOpts common;
    std::string gens;
    std::string show = "gaps,frobenius,smooth";
};

void run_numon(const NumonOpts& o) {
    Timer timer;
    moninv::NumericalMonoid h{parse_int_list(o.gens, "--gens")};
    moninv::validate(h);
    bool want_gaps = false, want_frob = false, want_smooth = false, want_inv = false;
    {
        std::stringstream ss(o.show);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok == "gaps")
                want_gaps = true;
            else if (tok == "frobenius")
                want_frob = true;
            else if (tok == "smooth")
                want_smooth = true;
            else if (tok == "invariants")
                want_inv = true;
            else
                throw moninv::InputError("option --show: unknown item \"" + tok + "\"");
        }
    }
    json out;
    out["gens"] = h.gens;
    if (want_gaps) out["gaps"] = moninv::gaps(h);
    if (want_frob) out["frobenius"] = moninv::frobenius(h);
    if (want_smooth) {
        out["smooth"] = moninv::is_smooth(h);
        out["transfer_is_valid"] = moninv::transfer_is_valid(h);
    }
    if (want_inv) {
        moninv::InvariantOptions opts;
        opts.limits = limits_of(o.common);
        moninv::InvariantSelection sel;
        moninv::InvariantReport rep =
            moninv::compute_invariants(moninv::to_presentation(h), sel, opts);
        out["invariants"] = moninv::invariant_report_to_json(rep, sel);
        out["relation_atom_count"] = rep.relation_atom_count;
    }
    if (o.common.format == "text") {
        std::ostringstream os;
        os << "gens = ";
        for (std::size_t i = 0; i < h.gens.size(); ++i) os << (i ? "," : "") << h.gens[i];
        os << "\n";
        if (want_gaps) {
            os << "gaps = {";
            const auto gs = moninv::gaps(h);
            for (std::size_t i = 0; i < gs.size(); ++i) os << (i ? ", " : "") << gs[i];
            os << "}\n";
        }
        if (want_frob) os << "frobenius = " << moninv::frobenius(h) << "\n";
        if (want_smooth)
            os << "smooth = " << (moninv::is_smooth(h) ? "true" : "false") << "\n";
        emit(o.common, os.str());
        return;
    }
    out["timing"] = o.common.timing ? json(timer.ms()) : json(nullptr);
    emit_json(o.common, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arithmetical invariants of finitely generated reduced monoids"};
    app.require_subcommand(1);

    AtomsGOpts atoms_g;
    auto* sub_atoms = app.add_subcommand(
        "atoms-g", "minimal zero-sum sequences over a finite abelian group");
    sub_atoms->add_option("input", atoms_g.input, "JSON file with the group spec");
    sub_atoms->add_option("--group", atoms_g.group, "inline group spec, e.g. 2,2");
    add_common(sub_atoms, atoms_g.common);

    TBlockOpts tblock;
    auto* sub_tblock =
        app.add_subcommand("tblock", "atoms of a T-block monoid as a presentation");
    sub_tblock->add_option("input", tblock.input, "JSON file with kind tblock")->required();
    sub_tblock->add_flag("--strip", tblock.strip, "strip prime coordinates before writing");
    add_common(sub_tblock, tblock.common);

    HilbertOpts hilbert;
    auto* sub_hilbert = app.add_subcommand(
        "hilbert", "minimal solutions of a homogeneous linear system with congruences");
    sub_hilbert->add_option("input", hilbert.input, "JSON file with eq/mod/bound")->required();
    add_common(sub_hilbert, hilbert.common);

    RelationsOpts relations;
    auto* sub_relations =
        app.add_subcommand("relations", "atoms of the monoid of relations of a presentation");
    sub_relations->add_option("input", relations.input, "input JSON file")->required();
    sub_relations->add_option("--kind", relations.kind, "relation submonoid")
        ->check(CLI::IsMember({"plain", "monotone", "equal"}));
    sub_relations->add_option("--bound", relations.bound, "length bound per side (0 = none)");
    sub_relations->add_flag("--raw", relations.raw, "skip the reduction step");
    add_common(sub_relations, relations.common);

    FactorizeOpts factorize;
    auto* sub_factorize =
        app.add_subcommand("factorize", "factorizations and local invariants of one element");
    sub_factorize->add_option("input", factorize.input, "input JSON file")->required();
    sub_factorize->add_option("--element", factorize.element, "element as a JSON array")
        ->required();
    add_common(sub_factorize, factorize.common);

    InvariantsOpts invariants;
    auto* sub_invariants =
        app.add_subcommand("invariants", "global arithmetical invariants of a monoid");
    sub_invariants->add_option("input", invariants.input, "input JSON file")->required();
    sub_invariants->add_option("--compute", invariants.compute,
                               "comma list: elasticity,catenary,ceq,cadj,cmon,madj,tame,delta "
                               "or all");
    sub_invariants->add_option("--bound", invariants.bound,
                               "relation-atom length bound: an integer, or auto (tblock only)");
    sub_invariants->add_option("--m", invariants.m_values,
                               "window widths for the m-adjacent catenary degree");
    sub_invariants->add_option("--elasticity-mode", invariants.elasticity_mode,
                               "elasticity path: auto, atoms, or support")
        ->check(CLI::IsMember({"auto", "atoms", "support"}));
    add_common(sub_invariants, invariants.common);

    NumonOpts numon;
    auto* sub_numon = app.add_subcommand("numon", "numerical monoid utilities");
    sub_numon->add_option("--gens", numon.gens, "generators, e.g. 2,5")->required();
    sub_numon->add_option("--show", numon.show,
                          "comma list: gaps,frobenius,smooth,invariants");
    add_common(sub_numon, numon.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_atoms->parsed()) {
            if (atoms_g.input.empty() && atoms_g.group.empty())
                throw moninv::InputError("atoms-g needs an input file or --group");
            run_atoms_g(atoms_g);
        } else if (sub_tblock->parsed()) {
            run_tblock(tblock);
        } else if (sub_hilbert->parsed()) {
            run_hilbert(hilbert);
        } else if (sub_relations->parsed()) {
            run_relations(relations);
        } else if (sub_factorize->parsed()) {
            run_factorize(factorize);
        } else if (sub_invariants->parsed()) {
            run_invariants(invariants);
        } else if (sub_numon->parsed()) {
            run_numon(numon);
        }
    } catch (const moninv::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const moninv::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const moninv::InternalError& e) {
        std::cerr << "internal error (this is a bug): " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error (this is a bug): " << e.what() << "\n";
        return 4;
    }
    return 0;
}
