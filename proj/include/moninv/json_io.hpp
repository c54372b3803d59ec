#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "moninv/abelian.hpp"
#include "moninv/common.hpp"
#include "moninv/diophantine.hpp"
#include "moninv/invariants.hpp"
#include "moninv/numon.hpp"
#include "moninv/presentation.hpp"
#include "moninv/relations.hpp"
#include "moninv/tblock.hpp"
#include "moninv/zerosum.hpp"

/**
 * JSON readers and writers for the file formats the CLI speaks.
 *
 * Input files use one schema with a `kind` discriminator:
 *   {"kind": "presentation", "free_dim": m, "torsion": [n1,...],
 *    "atoms": [[...],...], "labels": ["..."]?}
 *   {"kind": "numerical", "gens": [2,5]}
 *   {"kind": "block", "group": [2,2]}
 *   {"kind": "tblock", "group": [...], "torsion": [n1,...]?,
 *    "t_atoms": [{"free": [...], "torsion": [...], "iota": [...]}]}
 *
 * Every kind normalizes to a monoid presentation; `block` and `tblock`
 * additionally carry the group (and T data) used by bound derivation.
 * Parse errors raise InputError naming the offending field.
 */
namespace moninv {

using json = nlohmann::ordered_json;

namespace jio {

inline const json& field(const json& j, const std::string& name) {
    auto it = j.find(name);
    if (it == j.end()) throw InputError("missing field \"" + name + "\"");
    return *it;
}

inline long long as_int(const json& j, const std::string& name) {
    if (!j.is_number_integer())
        throw InputError("field \"" + name + "\" must be an integer");
    return j.get<long long>();
}

inline std::vector<long long> as_int_array(const json& j, const std::string& name) {
    if (!j.is_array()) throw InputError("field \"" + name + "\" must be an array of integers");
    std::vector<long long> out;
    for (const auto& v : j) out.push_back(as_int(v, name));
    return out;
}

inline std::vector<Vec> as_int_matrix(const json& j, const std::string& name) {
    if (!j.is_array()) throw InputError("field \"" + name + "\" must be an array of arrays");
    std::vector<Vec> out;
    for (const auto& row : j) out.push_back(as_int_array(row, name));
    return out;
}

}  // namespace jio

/** A parsed input file, normalized to a presentation. */
struct ParsedInput {
    std::string kind;
    json raw;                           // the file content, for input_echo
    Presentation presentation;          // the normalized monoid
    std::optional<AbelianGroup> group;  // for kind block / tblock
    std::optional<TMonoidSpec> tspec;   // for kind tblock
    std::optional<NumericalMonoid> numerical;
};

inline Presentation presentation_from_json(const json& j) {
    Presentation p;
    p.free_dim = jio::as_int(jio::field(j, "free_dim"), "free_dim");
    if (j.contains("torsion")) p.torsion = jio::as_int_array(j["torsion"], "torsion");
    p.atoms = jio::as_int_matrix(jio::field(j, "atoms"), "atoms");
    if (j.contains("labels")) {
        if (!j["labels"].is_array())
            throw InputError("field \"labels\" must be an array of strings");
        for (const auto& s : j["labels"]) {
            if (!s.is_string()) throw InputError("field \"labels\" must be an array of strings");
            p.labels.push_back(s.get<std::string>());
        }
    }
    validate(p);
    return p;
}

inline json presentation_to_json(const Presentation& p) {
    json j;
    j["kind"] = "presentation";
    j["free_dim"] = p.free_dim;
    j["torsion"] = p.torsion;
    j["atoms"] = p.atoms;
    if (!p.labels.empty()) j["labels"] = p.labels;
    return j;
}

inline TMonoidSpec tspec_from_json(const json& j) {
    TMonoidSpec t;
    if (j.contains("torsion")) t.t_torsion = jio::as_int_array(j["torsion"], "torsion");
    const json& atoms = jio::field(j, "t_atoms");
    if (!atoms.is_array()) throw InputError("field \"t_atoms\" must be an array");
    for (const auto& a : atoms) {
        TAtom atom;
        atom.free = jio::as_int_array(jio::field(a, "free"), "t_atoms[].free");
        if (a.contains("torsion"))
            atom.torsion = jio::as_int_array(a["torsion"], "t_atoms[].torsion");
        else
            atom.torsion.assign(t.t_torsion.size(), 0);
        atom.iota = jio::as_int_array(jio::field(a, "iota"), "t_atoms[].iota");
        t.atoms.push_back(std::move(atom));
    }
    if (t.atoms.empty()) throw InputError("field \"t_atoms\" must not be empty");
    return t;
}

inline ParsedInput parse_input(const json& j, const Limits& limits = Limits{}) {
    ParsedInput in;
    in.raw = j;
    if (!j.is_object()) throw InputError("input must be a JSON object with a \"kind\" field");
    const json& kind = jio::field(j, "kind");
    if (!kind.is_string()) throw InputError("field \"kind\" must be a string");
    in.kind = kind.get<std::string>();
    if (in.kind == "presentation") {
        in.presentation = presentation_from_json(j);
    } else if (in.kind == "numerical") {
        NumericalMonoid h{jio::as_int_array(jio::field(j, "gens"), "gens")};
        validate(h);
        in.numerical = h;
        in.presentation = to_presentation(h);
    } else if (in.kind == "block") {
        AbelianGroup g(jio::as_int_array(jio::field(j, "group"), "group"));
        in.group = g;
        Presentation p;
        p.free_dim = g.order();
        for (const Sequence& s : atoms_of_block_monoid(g, limits)) p.atoms.push_back(s);
        in.presentation = p;
    } else if (in.kind == "tblock") {
        AbelianGroup g(jio::as_int_array(jio::field(j, "group"), "group"));
        TMonoidSpec t = tspec_from_json(j);
        in.group = g;
        in.tspec = t;
        in.presentation = embed(g, t, tblock_atoms(g, t, limits));
    } else {
        throw InputError("field \"kind\" must be one of presentation, numerical, block, tblock");
    }
    return in;
}

inline json rational_to_json(const Rational& r) {
    json j;
    j["num"] = r.num;
    j["den"] = r.den;
    return j;
}

inline json invariant_report_to_json(const InvariantReport& rep, const InvariantSelection& sel) {
    json inv;
    auto entry = [](json value, bool exact) {
        json e;
        e["value"] = std::move(value);
        e["exact"] = exact;
        return e;
    };
    if (sel.elasticity)
        inv["elasticity"] = entry(rational_to_json(rep.elasticity), rep.elasticity_exact);
    if (sel.catenary) inv["catenary"] = entry(rep.catenary, rep.catenary_exact);
    if (sel.equal_catenary)
        inv["equal_catenary"] = entry(rep.equal_catenary, rep.equal_catenary_exact);
    if (sel.adjacent_catenary)
        inv["adjacent_catenary"] = entry(rep.adjacent_catenary, rep.adjacent_catenary_exact);
    if (sel.monotone_catenary)
        inv["monotone_catenary"] = entry(rep.monotone_catenary, rep.monotone_catenary_exact);
    if (sel.m_adjacent)
        for (const auto& [m, value] : rep.m_adjacent)
            inv["m_adjacent_m" + std::to_string(m)] = entry(value, rep.m_adjacent_exact);
    if (sel.tame) inv["tame_degree"] = entry(rep.tame_degree, !rep.tame_is_lower_bound);
    if (sel.delta) inv["delta_set"] = entry(rep.delta, !rep.delta_is_partial);
    return inv;
}

/** The full report object: input echo, run mode, invariants, count, timing. */
inline json report_to_json(const json& input_echo, const InvariantReport& rep,
                           const InvariantSelection& sel,
                           std::optional<long long> requested_bound, bool auto_bound,
                           std::optional<long long> timing_ms) {
    json j;
    j["input_echo"] = input_echo;
    json mode;
    mode["bound"] = rep.bound_used ? json(*rep.bound_used)
                                   : (requested_bound ? json(*requested_bound) : json(nullptr));
    mode["auto"] = auto_bound;
    j["mode"] = mode;
    j["invariants"] = invariant_report_to_json(rep, sel);
    j["relation_atom_count"] = rep.relation_atom_count;
    j["timing"] = timing_ms ? json(*timing_ms) : json(nullptr);
    return j;
}

inline DioSystem dio_system_from_json(const json& j) {
    DioSystem sys;
    if (j.contains("eq")) sys.eq_rows = jio::as_int_matrix(j["eq"], "eq");
    if (j.contains("mod")) {
        if (!j["mod"].is_array()) throw InputError("field \"mod\" must be an array");
        for (const auto& m : j["mod"]) {
            ModRow row;
            row.row = jio::as_int_array(jio::field(m, "row"), "mod[].row");
            row.n = jio::as_int(jio::field(m, "n"), "mod[].n");
            sys.mod_rows.push_back(std::move(row));
        }
    }
    std::size_t nv = 0;
    for (const auto& r : sys.eq_rows) nv = std::max(nv, r.size());
    for (const auto& m : sys.mod_rows) nv = std::max(nv, m.row.size());
    sys.num_vars = nv;
    validate(sys);
    return sys;
}

inline std::optional<long long> bound_from_json(const json& j) {
    if (!j.contains("bound") || j["bound"].is_null()) return std::nullopt;
    return jio::as_int(j["bound"], "bound");
}

}  // namespace moninv
