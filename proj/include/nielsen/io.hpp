#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nielsen/arrangement.hpp"
#include "nielsen/genus.hpp"
#include "nielsen/isometry.hpp"
#include "nielsen/obstruction.hpp"

namespace nielsen::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// scalars

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline json to_json(const Integer &x) {
  if (x >= std::numeric_limits<std::int64_t>::min() &&
      x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline json to_json(const Rational &x) { return to_string(x); }

inline Integer integer_from_json(const json &j) {
  try {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) return Integer(j.get<std::string>());
  } catch (const std::exception &) {
  }
  throw Error(Errc::ParseError, "expected an integer, got " + j.dump());
}

/// Accepts integers, "a/b" strings and "a" strings.
inline Rational rational_from_json(const json &j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      const auto slash = s.find('/');
      if (slash == std::string::npos) return Rational(Integer(s));
      const Integer den(s.substr(slash + 1));
      if (den == 0) throw Error(Errc::ParseError, "zero denominator in " + s);
      return Rational(Integer(s.substr(0, slash)), den);
    } catch (const Error &) {
      throw;
    } catch (const std::exception &) {
    }
  }
  throw Error(Errc::ParseError, "expected a rational, got " + j.dump());
}

inline json to_json(const Vector &v) {
  json a = json::array();
  for (const auto &x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const RatVector &v) {
  json a = json::array();
  for (const auto &x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const IntMatrix &m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline json to_json(const std::vector<Vector> &vs) {
  json a = json::array();
  for (const auto &v : vs) a.push_back(to_json(v));
  return a;
}

inline Vector vector_from_json(const json &j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "expected an array, got " + j.dump());
  Vector v;
  for (const auto &x : j) v.push_back(integer_from_json(x));
  return v;
}

inline RatVector rat_vector_from_json(const json &j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "expected an array, got " + j.dump());
  RatVector v;
  for (const auto &x : j) v.push_back(rational_from_json(x));
  return v;
}

inline std::vector<Vector> vectors_from_json(const json &j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "expected a list of vectors");
  std::vector<Vector> out;
  for (const auto &v : j) out.push_back(vector_from_json(v));
  return out;
}

inline IntMatrix matrix_from_json(const json &j) {
  const auto rows = vectors_from_json(j);
  if (rows.empty()) throw Error(Errc::EmptyInput, "empty matrix");
  for (const auto &r : rows)
    if (r.size() != rows[0].size()) throw Error(Errc::ParseError, "ragged matrix");
  return IntMatrix::from_rows(rows);
}

// ---------------------------------------------------------------------------
// argument resolution

/// Parse `arg` as a JSON file path if one exists, otherwise as inline JSON.
inline json load_json_arg(const std::string &arg) {
  std::string text = arg;
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error &) {
    throw Error(Errc::ParseError, "cannot parse '" + arg + "' as JSON or find it as a file");
  }
}

inline Lattice lattice_from_json(const json &j) {
  if (j.is_string()) {
    const auto l = lattices::by_name(j.get<std::string>());
    if (!l) throw Error(Errc::UnknownLattice, "unknown lattice " + j.get<std::string>());
    return *l;
  }
  if (!j.is_object() || !j.contains("gram"))
    throw Error(Errc::ParseError, "lattice must be a name or {\"rank\", \"gram\"}");
  Lattice l = make_lattice(matrix_from_json(j.at("gram")));
  if (j.contains("rank") && integer_from_json(j.at("rank")) != Integer(l.rank()))
    throw Error(Errc::DimensionMismatch, "rank field disagrees with gram");
  return l;
}

/// Built-in names win over files and inline JSON.
inline Lattice resolve_lattice(const std::string &arg) {
  if (auto l = lattices::by_name(arg)) return *l;
  const bool looks_like_json = !arg.empty() && (arg.front() == '{' || arg.front() == '"');
  std::error_code ec;
  if (!looks_like_json && !std::filesystem::is_regular_file(arg, ec)) {
    std::string known;
    for (const auto &n : lattices::names()) known += (known.empty() ? "" : ", ") + n;
    throw Error(Errc::UnknownLattice, "'" + arg + "' is not a built-in (" + known +
                                          "), a file, or inline JSON");
  }
  return lattice_from_json(load_json_arg(arg));
}

inline json lattice_json(const Lattice &l) {
  return json{{"rank", l.rank()}, {"gram", to_json(l.gram())}};
}

inline Isometry isometry_from_json(const json &j) {
  if (!j.is_object() || !j.contains("lattice") || !j.contains("matrix"))
    throw Error(Errc::ParseError, "isometry must be {\"lattice\", \"matrix\"}");
  return Isometry(lattice_from_json(j.at("lattice")), matrix_from_json(j.at("matrix")));
}

inline json isometry_json(const Isometry &g) {
  return json{{"lattice", lattice_json(g.lattice())}, {"matrix", to_json(g.matrix())}};
}

/// {"ambient_dim": N, "subspaces": [[n1, n2, n3], ...]}
inline Arrangement arrangement_from_json(const json &j) {
  if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("subspaces"))
    throw Error(Errc::ParseError, "arrangement must be {\"ambient_dim\", \"subspaces\"}");
  std::vector<Subspace> subs;
  for (const auto &s : j.at("subspaces")) {
    Subspace sub;
    for (const auto &n : s) sub.normals.push_back(rat_vector_from_json(n));
    subs.push_back(std::move(sub));
  }
  const Integer n = integer_from_json(j.at("ambient_dim"));
  if (n < 1) throw Error(Errc::InvalidArgument, "ambient_dim must be positive");
  return Arrangement(static_cast<std::size_t>(n), std::move(subs));
}

inline json arrangement_json(const Arrangement &a) {
  json subs = json::array();
  for (const auto &s : a.subspaces()) {
    json ns = json::array();
    for (const auto &n : s.normals) ns.push_back(to_json(n));
    subs.push_back(ns);
  }
  return json{{"ambient_dim", a.ambient_dim()}, {"subspaces", subs}};
}

// ---------------------------------------------------------------------------
// reports

inline json to_json(const Signature &s) {
  json j{{"p", s.positive}, {"q", s.negative}};
  if (s.deficit) j["deficit"] = s.deficit;
  return j;
}

inline json lattice_summary(const Lattice &l) {
  return json{{"rank", l.rank()},
              {"det", to_json(l.det())},
              {"even", l.even()},
              {"unimodular", l.unimodular()},
              {"signature", to_string(signature(l))}};
}

inline json to_json(const SublatticeReport &r) {
  json j{{"span_basis", to_json(r.span_basis)},
         {"span_gram", to_json(r.span_gram)},
         {"span_rank", r.span_rank},
         {"span_signature", to_string(r.span_signature)},
         {"complement_basis", to_json(r.complement_basis)},
         {"complement_signature", to_string(r.complement_signature)}};
  j["index"] = r.index_in_ambient ? to_json(*r.index_in_ambient) : json("degenerate");
  return j;
}

inline json to_json(const IsometryClass &c) {
  return json{{"det", c.determinant},
              {"spin", c.spinor_norm},
              {"tag", to_string(c.tag)},
              {"in_aut_prime", c.in_aut_prime()},
              {"in_aut_double_prime", c.in_aut_double_prime()}};
}

inline json to_json(const FormalPowerSeries &s) {
  json a = json::array();
  for (std::size_t k = 0; k <= s.order(); ++k) a.push_back(to_json(s[k]));
  return a;
}

/// Sorted monomial list [{"monomial", "coeff"}].
inline json to_json(const GradedPolynomial &p) {
  json a = json::array();
  for (const auto &[m, c] : p.terms())
    a.push_back(json{{"monomial", m.empty() ? std::string("1") : to_string(m)},
                     {"coeff", to_json(c)}});
  return a;
}

inline json to_json(const TensorClass &t) {
  json a = json::array();
  for (const auto &[s, c] : t.terms()) {
    json slots = json::array();
    for (const auto &m : s) slots.push_back(m.empty() ? std::string("1") : to_string(m));
    a.push_back(json{{"slots", slots}, {"coeff", to_json(c)}});
  }
  return a;
}

inline json to_json(const StableRange &r) {
  return json{{"p", r.p},
              {"q", r.q},
              {"bijective_upto", r.bijective_upto},
              {"iso_upto_with_2q", r.iso_upto_with_2q}};
}

inline json to_json(const IndependenceCertificate &c) {
  json entries = json::array();
  for (const auto &e : c.entries)
    entries.push_back(json{{"monomial", e.monomial.empty() ? std::string("1") : to_string(e.monomial)},
                           {"max_length", e.max_length},
                           {"slot_multiset", e.slot_multiset},
                           {"maximal_terms", e.maximal_terms},
                           {"all_permutations", e.all_permutations}});
  return json{{"independent", c.independent}, {"slots", c.slots}, {"entries", entries}};
}

inline json to_json(const StabilizerReport &r) {
  return json{{"tuple_size", r.tuple_size},
              {"span_signature", to_string(r.span_signature)},
              {"span_rank", r.span_rank},
              {"degenerate_span", r.degenerate_span},
              {"stabilizer", "SO+(" + std::to_string(r.ambient_p) + "," +
                                 std::to_string(r.ambient_q) + ")"},
              {"odd_vanishing_upto", r.odd_vanishing_upto},
              {"finite_quotient_bound", to_json(r.finite_quotient_bound)},
              {"sublattice", to_json(r.sublattice)}};
}

inline json to_json(const RegionCheck &c) {
  json rows = json::array();
  for (const auto &r : c.rows)
    rows.push_back(json{{"n", r.tuple_size},
                        {"n1", r.n1},
                        {"n2", r.n2},
                        {"max_odd_degree", r.max_odd_degree},
                        {"vanishing_range", r.vanishing_range},
                        {"ok", r.ok}});
  return json{{"max_total_degree", c.max_total_degree}, {"rows", rows}, {"all_ok", c.all_ok}};
}

inline json to_json(const ObstructionReport &r, bool cite) {
  json cands = json::array();
  for (const auto &c : r.candidates)
    cands.push_back(json{{"class", "l_" + std::to_string(c.i)},
                         {"degree", c.degree},
                         {"in_stable_range", c.in_stable_range},
                         {"bott_obstruction", c.bott_obstruction}});
  json reasons = json::array();
  for (const auto &x : r.reasons) {
    json e{{"text", x.text}};
    if (cite) e["anchor"] = x.anchor;
    reasons.push_back(e);
  }
  return json{{"k", r.k},
              {"signature", to_string(r.signature)},
              {"iso_range", r.iso_range},
              {"candidates", cands},
              {"verdict", to_string(r.verdict)},
              {"reasons", reasons}};
}

inline json to_json(const TransversalityResult &t) {
  json j{{"transversal", t.transversal}};
  if (!t.transversal) {
    j["witness"] = t.witness;
    j["witness_rank"] = t.witness_rank;
  }
  return j;
}

inline json to_json(const BettiTable &t) {
  json b = json::array();
  for (const auto &[d, r] : t.betti) b.push_back(json{{"degree", d}, {"rank", to_json(r)}});
  return json{{"betti", b}, {"valid_upto", t.valid_upto}};
}

} // namespace nielsen::io
