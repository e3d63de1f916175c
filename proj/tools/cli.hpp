#pragma once

#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nielsen/acceptance.hpp"
#include "nielsen/io.hpp"

namespace nielsen::cli {

using io::json;

/// Verb name and the library operations it reaches.
struct VerbInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> operations;
};

inline const std::vector<VerbInfo> &verbs() {
  static const std::vector<VerbInfo> v{
      {"lattice", "invariants of a lattice, direct sums, sublattice reports",
       {"make_lattice", "direct_sum", "signature", "sublattice_report"}},
      {"roots", "vectors of a given norm", {"enumerate_vectors"}},
      {"isometry", "determinant, spinor norm and subgroup of an isometry",
       {"reflection", "compose", "spinor_norm", "classify"}},
      {"genus", "L-tilde series, Chern character, BO3 relation",
       {"l_tilde_series", "l_tilde_rank2", "fiber_integrate_surface", "chern_character_real",
        "verify_bo3_relation"}},
      {"ell", "l_i classes and their surface-product expansion",
       {"ell_from_ch", "ell_product_of_surfaces"}},
      {"sum", "pullback of l-monomials to a connected sum", {"connected_sum_pullback"}},
      {"independence", "maximal-length certificate for l-monomials", {"independence_certificate"}},
      {"range", "stable range and the degree thresholds",
       {"borel_stable_range", "bott_obstruction", "harer_genus_threshold"}},
      {"stabilizer", "root-tuple stabilizers and the E2 region check",
       {"stabilizer_report", "e2_region_check"}},
      {"betti", "Betti numbers of codimension-3 arrangement complements",
       {"transversality_check", "betti_complement", "k3_arrangement_from_roots"}},
      {"report", "section obstruction report for an intersection form", {"obstruction_report"}},
      {"reproduce", "run the acceptance suite", {"reproduce"}},
  };
  return v;
}

namespace detail {

inline std::string join(const std::vector<std::string> &xs, const std::string &sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline std::string cite_text(const std::string &anchor) { return "  cite: " + anchor + "\n"; }

inline std::vector<unsigned> parse_exponents(const std::string &s) {
  std::vector<unsigned> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int x = std::stoi(item, &used);
      if (used != item.size() || x < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<unsigned>(x));
    } catch (const std::exception &) {
      throw Error(Errc::ParseError, "exponent list '" + s + "' must be nonnegative integers");
    }
  }
  if (out.empty()) throw Error(Errc::ParseError, "empty exponent list");
  return out;
}

inline std::string sublattice_text(const SublatticeReport &r) {
  std::string out;
  std::vector<std::string> span, comp;
  for (const auto &v : r.span_basis) span.push_back(to_string(v));
  for (const auto &v : r.complement_basis) comp.push_back(to_string(v));
  out += "span_basis: " + join(span, " ") + "\n";
  out += "span_rank: " + std::to_string(r.span_rank) + "\n";
  out += "span_signature: " + to_string(r.span_signature) + "\n";
  out += "complement_basis: " + join(comp, " ") + "\n";
  out += "complement_signature: " + to_string(r.complement_signature) + "\n";
  out += "index: " + (r.index_in_ambient ? r.index_in_ambient->str() : std::string("degenerate")) + "\n";
  return out;
}

} // namespace detail

/// Parses argv (without the program name) and runs one verb.
/// Exit codes: 0 success, 1 domain error, 2 usage error.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact lattice, characteristic-class and obstruction computations", "nielsen"};
  app.require_subcommand(1);
  bool as_json = false, cite = false;
  app.add_flag("--json", as_json, "machine-readable output")->configurable(false);
  app.add_flag("--cite", cite, "attach the justification for each verdict line");

  std::map<std::string, CLI::App *> sub;
  for (const auto &v : verbs()) {
    sub[v.name] = app.add_subcommand(v.name, v.summary);
    sub[v.name]->fallthrough();
  }

  // lattice
  std::string lat_in;
  std::vector<std::string> lat_sum;
  bool lat_sig = false;
  std::string lat_sub;
  sub["lattice"]->add_option("input", lat_in, "built-in name, JSON file or inline JSON")->required();
  sub["lattice"]->add_option("--sum", lat_sum, "direct-sum further lattices");
  sub["lattice"]->add_flag("--signature", lat_sig, "print only the signature");
  sub["lattice"]->add_option("--sublattice", lat_sub, "JSON list of vectors spanning a sublattice");

  // roots
  std::string roots_in;
  std::optional<std::int64_t> roots_norm, roots_box;
  sub["roots"]->add_option("input", roots_in, "lattice")->required();
  sub["roots"]->add_option("--norm", roots_norm, "target norm (default 2 if positive definite, else -2)");
  sub["roots"]->add_option("--box", roots_box, "coordinate box half-width")->check(CLI::PositiveNumber);

  // isometry
  std::string iso_in, iso_lattice, iso_compose, iso_reflect;
  sub["isometry"]->add_option("input", iso_in, "isometry JSON {lattice, matrix}");
  sub["isometry"]->add_option("--lattice", iso_lattice, "lattice for --reflect");
  sub["isometry"]->add_option("--reflect", iso_reflect, "JSON list of reflection vectors, composed left to right");
  sub["isometry"]->add_option("--compose", iso_compose, "isometry JSON applied after the input");

  // genus
  std::optional<std::size_t> gen_series;
  std::optional<unsigned> gen_ltilde, gen_ch;
  unsigned gen_max_degree = 12;
  bool gen_bo3 = false, gen_deg12 = false;
  auto *genus = sub["genus"];
  genus->add_option("--series", gen_series, "coefficients of x/tanh(x/2) up to this order");
  genus->add_option("--l-tilde", gen_ltilde, "degree-4j part for rank-2 bundles and its fibre integral");
  genus->add_option("--ch", gen_ch, "Chern character of a real bundle of this rank (1..3)");
  genus->add_option("--max-degree", gen_max_degree, "truncation degree for --ch");
  genus->add_flag("--bo3", gen_bo3, "check ch4^2 = 12 ch8 for rank 3");
  genus->add_flag("--degree12", gen_deg12, "compare ch4 ch8 with ch12 for rank 3");

  // ell
  unsigned ell_i = 1;
  std::vector<int> ell_surfaces;
  bool ell_relation = false;
  sub["ell"]->add_option("i", ell_i, "index of l_i")->check(CLI::PositiveNumber);
  sub["ell"]->add_option("--surfaces", ell_surfaces, "genera of 2k surface factors")->delimiter(',');
  sub["ell"]->add_flag("--relation", ell_relation, "constant c with l_1^2 = c l_2");

  // sum
  std::vector<std::string> sum_monomials;
  std::size_t sum_slots = 2;
  sub["sum"]->add_option("monomials", sum_monomials, "exponent lists, e.g. 2,1 for l_1^2 l_2")->required();
  sub["sum"]->add_option("--slots", sum_slots, "number of summands")->check(CLI::PositiveNumber);

  // independence
  std::size_t ind_n = 0, ind_big_n = 0;
  sub["independence"]->add_option("n", ind_n, "number of l classes")->required();
  sub["independence"]->add_option("N", ind_big_n, "number of summands and max monomial degree")->required();

  // range
  int range_p = 0, range_q = 0;
  std::vector<int> range_bott;
  std::optional<int> range_harer;
  sub["range"]->add_option("p", range_p)->required();
  sub["range"]->add_option("q", range_q)->required();
  sub["range"]->add_option("--bott", range_bott, "i,k: is l_i zero on flat bundles over 4k-manifolds")
      ->delimiter(',')
      ->expected(2);
  sub["range"]->add_option("--harer", range_harer, "genus threshold for a class of this degree");

  // stabilizer
  std::string stab_in, stab_roots;
  bool stab_region = false;
  int stab_max_degree = 9;
  sub["stabilizer"]->add_option("input", stab_in, "lattice (default K3)");
  sub["stabilizer"]->add_option("--roots", stab_roots, "JSON list of roots");
  sub["stabilizer"]->add_flag("--region", stab_region, "run the E2 region check");
  sub["stabilizer"]->add_option("--max-degree", stab_max_degree, "region total degree");

  // betti
  std::string betti_in, betti_k3;
  int betti_max_degree = 6;
  std::optional<std::size_t> betti_trans;
  sub["betti"]->add_option("input", betti_in, "arrangement JSON {ambient_dim, subspaces}");
  sub["betti"]->add_option("--k3-roots", betti_k3, "JSON list of K3 roots; builds the 57-dimensional model");
  sub["betti"]->add_option("--max-degree", betti_max_degree, "highest degree reported");
  sub["betti"]->add_option("--transversality", betti_trans, "only check subsets up to this size");

  // report
  std::string rep_in;
  int rep_k = 1;
  bool rep_k3 = false;
  std::vector<int> rep_surfaces;
  sub["report"]->add_option("input", rep_in, "intersection form")->required();
  sub["report"]->add_option("--k", rep_k, "dimension 4k")->check(CLI::PositiveNumber);
  sub["report"]->add_flag("--k3-summand", rep_k3, "the manifold has a K3 connected summand");
  sub["report"]->add_option("--surfaces", rep_surfaces, "genera of a surface-product fibre")->delimiter(',');

  // reproduce
  bool corrupt_e8 = false;
  sub["reproduce"]->add_flag("--corrupt-e8", corrupt_e8)->group("");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return 2;
  }

  auto emit = [&](const json &j, const std::string &text) {
    if (as_json) out << j.dump(2) << "\n";
    else out << text;
  };
  auto usage = [&](const std::string &msg) {
    err << "usage error: " << msg << "\n";
    return 2;
  };

  try {
    if (sub["lattice"]->parsed()) {
      std::vector<Lattice> parts{io::resolve_lattice(lat_in)};
      for (const auto &s : lat_sum) parts.push_back(io::resolve_lattice(s));
      const Lattice l = parts.size() == 1 ? parts[0] : direct_sum(parts);
      if (lat_sig) {
        emit(json{{"signature", to_string(signature(l))}}, to_string(signature(l)) + "\n");
        return 0;
      }
      json j = io::lattice_summary(l);
      std::string text = "rank: " + std::to_string(l.rank()) + "\ndet: " + l.det().str() +
                         "\neven: " + detail::bool_str(l.even()) +
                         "\nunimodular: " + detail::bool_str(l.unimodular()) +
                         "\nsignature: " + to_string(signature(l)) + "\n";
      if (!lat_sub.empty()) {
        const auto rep = sublattice_report(l, io::vectors_from_json(io::load_json_arg(lat_sub)));
        j["sublattice"] = io::to_json(rep);
        text += detail::sublattice_text(rep);
      }
      emit(j, text);
      return 0;
    }

    if (sub["roots"]->parsed()) {
      const Lattice l = io::resolve_lattice(roots_in);
      const Signature s = signature(l);
      const std::int64_t norm = roots_norm ? *roots_norm : (s.positive == l.rank() ? 2 : -2);
      const auto vs = enumerate_vectors(l, norm, roots_box);
      std::string text = "norm: " + std::to_string(norm) + "\ncount: " + std::to_string(vs.size()) + "\n";
      for (const auto &v : vs) text += to_string(v) + "\n";
      emit(json{{"norm", norm}, {"count", vs.size()}, {"vectors", io::to_json(vs)}}, text);
      return 0;
    }

    if (sub["isometry"]->parsed()) {
      std::optional<Isometry> g;
      if (!iso_in.empty()) g = io::isometry_from_json(io::load_json_arg(iso_in));
      if (!iso_reflect.empty()) {
        if (iso_lattice.empty() && !g) return usage("--reflect needs --lattice or an input isometry");
        const Lattice l = g ? g->lattice() : io::resolve_lattice(iso_lattice);
        Isometry acc = g ? *g : Isometry::identity(l);
        for (const auto &v : io::vectors_from_json(io::load_json_arg(iso_reflect)))
          acc = compose(acc, reflection(l, v));
        g = acc;
      }
      if (!g) return usage("isometry needs an input or --reflect");
      if (!iso_compose.empty()) g = compose(io::isometry_from_json(io::load_json_arg(iso_compose)), *g);
      const auto c = classify(*g);
      const auto f = reflection_factorization(*g);
      json j = io::to_json(c);
      j["reflections"] = f.vectors.size();
      j["matrix"] = io::to_json(g->matrix());
      emit(j, "det: " + std::to_string(c.determinant) + "\nspin: " + std::to_string(c.spinor_norm) +
                  "\nclass: " + to_string(c.tag) + "\nin_aut_prime: " + detail::bool_str(c.in_aut_prime()) +
                  "\nin_aut_double_prime: " + detail::bool_str(c.in_aut_double_prime()) +
                  "\nreflections: " + std::to_string(f.vectors.size()) + "\n");
      return 0;
    }

    if (sub["genus"]->parsed()) {
      json j = json::object();
      std::string text;
      const bool any = gen_series || gen_ltilde || gen_ch || gen_bo3 || gen_deg12;
      if (gen_series || !any) {
        const auto s = l_tilde_series(gen_series.value_or(6));
        j["l_tilde_series"] = io::to_json(s);
        text += to_string(s);
      }
      if (gen_ltilde) {
        const auto p = l_tilde_rank2(*gen_ltilde);
        const auto q = fiber_integrate_surface(p);
        j["l_tilde"] = io::to_json(p);
        j["fiber_integral"] = io::to_json(q);
        text += "L~_" + std::to_string(*gen_ltilde) + ": " + to_string(p) + "\npi_*: " + to_string(q) + "\n";
      }
      if (gen_ch) {
        const auto ch = chern_character_real(*gen_ch, gen_max_degree);
        j["ch"] = io::to_json(ch);
        text += "ch: " + to_string(ch) + "\n";
      }
      if (gen_bo3) {
        const auto r = verify_bo3_relation();
        j["bo3"] = json{{"lhs", io::to_json(r.lhs)}, {"rhs", io::to_json(r.rhs)}, {"equal", r.equal}};
        text += "ch4^2: " + to_string(r.lhs) + "\n12*ch8: " + to_string(r.rhs) +
                "\nequal: " + detail::bool_str(r.equal) + "\n";
      }
      if (gen_deg12) {
        const auto d = degree_twelve_check();
        j["degree12"] = json{{"product", io::to_json(d.product)}, {"ch12", io::to_json(d.ch12)},
                             {"ratio", io::to_json(d.ratio)}};
        text += "ch4*ch8: " + to_string(d.product) + "\nch12: " + to_string(d.ch12) +
                "\nratio: " + to_string(d.ratio) + "\n";
      }
      emit(j, text);
      return 0;
    }

    if (sub["ell"]->parsed()) {
      json j = json::object();
      std::string text;
      if (!ell_surfaces.empty()) {
        const auto t = ell_product_of_surfaces(ell_surfaces, ell_i);
        j["surface_product"] = io::to_json(t);
        text += "l_" + std::to_string(ell_i) + ": " + to_string(t) + "\n";
      } else {
        const auto p = ell_from_ch(ell_i);
        j["l"] = io::to_json(p);
        text += "l_" + std::to_string(ell_i) + ": " + to_string(p) + "\n";
      }
      if (ell_relation) {
        const Rational c = ell_relation_constant();
        j["relation_constant"] = io::to_json(c);
        text += "l_1^2 = " + to_string(c) + "*l_2\n";
      }
      emit(j, text);
      return 0;
    }

    if (sub["sum"]->parsed()) {
      json arr = json::array();
      std::string text;
      for (const auto &m : sum_monomials) {
        const auto p = ell_monomial(detail::parse_exponents(m));
        const auto t = connected_sum_pullback(p, sum_slots);
        const auto top = t.maximal_length_part();
        arr.push_back(json{{"monomial", to_string(p)},
                           {"pullback", io::to_json(t)},
                           {"max_length", t.max_length()},
                           {"maximal_length_part", io::to_json(top)}});
        text += to_string(p) + " -> " + to_string(t) + "\n  max length " +
                std::to_string(t.max_length()) + ": " + to_string(top) + "\n";
      }
      emit(json{{"slots", sum_slots}, {"results", arr}}, text);
      return 0;
    }

    if (sub["independence"]->parsed()) {
      const auto c = independence_certificate(ind_n, ind_big_n);
      std::string text = "independent: " + detail::bool_str(c.independent) + "\n";
      for (const auto &e : c.entries)
        text += "  " + (e.monomial.empty() ? std::string("1") : to_string(e.monomial)) +
                ": length " + std::to_string(e.max_length) + " {" + detail::join(e.slot_multiset, ",") +
                "} x" + std::to_string(e.maximal_terms) + "\n";
      emit(io::to_json(c), text);
      return 0;
    }

    if (sub["range"]->parsed()) {
      const auto r = borel_stable_range(range_p, range_q);
      json j = io::to_json(r);
      std::string text = "bijective_upto: " + std::to_string(r.bijective_upto) +
                         "\niso_upto_with_2q: " + std::to_string(r.iso_upto_with_2q) + "\n";
      if (cite) {
        j["anchor"] = "H*(BSO(p,q)) -> H*(BSO+(p,q)_Z) bijective in degrees <= floor((p+q)/2) - 2";
        text += detail::cite_text(j["anchor"]);
      }
      if (!range_bott.empty()) {
        const bool b = bott_obstruction(range_bott[0], range_bott[1]);
        j["bott_obstruction"] = b;
        text += "bott_obstruction: " + detail::bool_str(b) + "\n";
        if (cite) text += detail::cite_text("l_i vanishes on flat bundles over 4k-manifolds when i > k");
      }
      if (range_harer) {
        const int g = harer_genus_threshold(*range_harer);
        j["harer_genus_threshold"] = g;
        text += "harer_genus_threshold: " + std::to_string(g) + "\n";
        if (cite) text += detail::cite_text("kappa classes stable in degrees <= g/2 - 1");
      }
      emit(j, text);
      return 0;
    }

    if (sub["stabilizer"]->parsed()) {
      json j = json::object();
      std::string text;
      if (stab_roots.empty() && !stab_region) return usage("stabilizer needs --roots or --region");
      if (!stab_roots.empty()) {
        const Lattice l = stab_in.empty() ? lattices::k3() : io::resolve_lattice(stab_in);
        const auto r = stabilizer_report(l, io::vectors_from_json(io::load_json_arg(stab_roots)));
        j["stabilizer"] = io::to_json(r);
        text += "stabilizer: SO+(" + std::to_string(r.ambient_p) + "," + std::to_string(r.ambient_q) +
                ")\nspan_signature: " + to_string(r.span_signature) +
                "\ndegenerate_span: " + detail::bool_str(r.degenerate_span) +
                "\nodd_vanishing_upto: " + std::to_string(r.odd_vanishing_upto) +
                "\nfinite_quotient_bound: " + r.finite_quotient_bound.str() + "\n";
        if (cite) text += detail::cite_text("stable range of the stabilizer SO+(3-n1,19-n2) of the tuple");
      }
      if (stab_region) {
        const auto c = e2_region_check(stab_max_degree);
        j["region"] = io::to_json(c);
        for (const auto &row : c.rows)
          text += "n=" + std::to_string(row.tuple_size) + " (" + std::to_string(row.n1) + "," +
                  std::to_string(row.n2) + "): odd degrees <= " + std::to_string(row.max_odd_degree) +
                  ", vanishing <= " + std::to_string(row.vanishing_range) + (row.ok ? " ok" : " FAIL") + "\n";
        text += "all_ok: " + detail::bool_str(c.all_ok) + "\n";
      }
      emit(j, text);
      return 0;
    }

    if (sub["betti"]->parsed()) {
      if (betti_in.empty() == betti_k3.empty())
        return usage("betti needs exactly one of an arrangement input or --k3-roots");
      const Arrangement a =
          betti_k3.empty()
              ? io::arrangement_from_json(io::load_json_arg(betti_in))
              : k3_arrangement_from_roots(lattices::k3(), io::vectors_from_json(io::load_json_arg(betti_k3)));
      if (betti_trans) {
        const auto t = transversality_check(a, *betti_trans);
        std::vector<std::string> w;
        for (auto i : t.witness) w.push_back(std::to_string(i));
        emit(io::to_json(t), "transversal: " + detail::bool_str(t.transversal) + "\n" +
                                 (t.transversal ? std::string()
                                                : "witness: {" + detail::join(w, ",") + "} rank " +
                                                      std::to_string(t.witness_rank) + "\n"));
        return 0;
      }
      const auto t = betti_complement(a, betti_max_degree);
      std::string text;
      for (const auto &[d, r] : t.betti) text += std::to_string(d) + ": " + r.str() + "\n";
      text += "valid_upto: " + std::to_string(t.valid_upto) + "\n";
      json j = io::to_json(t);
      j["ambient_dim"] = a.ambient_dim();
      j["subspaces"] = a.size();
      emit(j, text);
      return 0;
    }

    if (sub["report"]->parsed()) {
      const Lattice l = io::resolve_lattice(rep_in);
      std::optional<std::vector<int>> surfaces;
      if (!rep_surfaces.empty()) surfaces = rep_surfaces;
      const auto r = obstruction_report(l, rep_k, rep_k3, surfaces);
      std::vector<std::string> cands;
      for (const auto &c : r.candidates) cands.push_back("l_" + std::to_string(c.i));
      std::string text = "signature: " + to_string(r.signature) + "\nk: " + std::to_string(r.k) +
                         "\niso_range: " + std::to_string(r.iso_range) +
                         "\ncandidates: " + (cands.empty() ? std::string("none") : detail::join(cands, " ")) +
                         "\nverdict: " + to_string(r.verdict) + "\n";
      for (const auto &x : r.reasons) {
        text += "reason: " + x.text + "\n";
        if (cite) text += detail::cite_text(x.anchor);
      }
      emit(io::to_json(r, cite), text);
      return 0;
    }

    if (sub["reproduce"]->parsed()) {
      acceptance::AcceptanceConfig cfg;
      if (corrupt_e8) cfg.e8_gram = acceptance::corrupted_e8_gram();
      const auto results = acceptance::run_all(cfg);
      emit(acceptance::to_json(results), acceptance::to_text(results));
      return acceptance::all_pass(results) ? 0 : 1;
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::ParseError || e.code() == Errc::UnknownLattice ? 2 : 1;
  }
  return usage("no verb given");
}

} // namespace nielsen::cli
