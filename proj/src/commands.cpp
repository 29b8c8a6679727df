#include <random>
#include <sstream>

#include "gradwb/cli.hpp"
#include "gradwb/text.hpp"
#include "gradwb/weyl.hpp"

namespace gw {

std::string Report::text() const {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

namespace {

constexpr std::size_t kSampleCount = 100;
constexpr std::uint64_t kSampleSeed = 1;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Usage of one command: exact word count plus optional trailing words.
void arity(const std::vector<std::string>& a, std::size_t min, std::size_t max, const std::string& usage) {
  if (a.size() < min || a.size() > max) throw InputError("usage: " + usage);
}

// "over X" at position i, if present.
std::optional<std::string> over_arg(const std::vector<std::string>& a, std::size_t i, const std::string& usage) {
  if (a.size() <= i) return std::nullopt;
  if (a[i] != "over" || a.size() <= i + 1) throw InputError("usage: " + usage);
  return a[i + 1];
}

Grading grading_over(const Grading& g, const Field& K) { return K == g.algebra().field() ? g : reduce_to(g, K); }

std::string join_perms(const Grading& g, const std::vector<PermGroup::Perm>& ps) {
  if (ps.empty()) return "()";
  return text::join(ps, " ", [&](const PermGroup::Perm& p) { return format_permutation(g, p); });
}

class Runner {
 public:
  Runner(const Deck& d, const CliOptions& o, Report& r) : deck_(d), opts_(o), rep_(r) {}

  void run(const std::vector<std::string>& a) {
    if (a.empty()) throw InputError("no command given");
    const std::string& cmd = a[0];
    if (cmd == "check") return check(a);
    if (cmd == "support") return support(a);
    if (cmd == "universal") return universal(a);
    if (cmd == "weyl") return weyl(a);
    if (cmd == "points") return points(a);
    if (cmd == "member") return member(a);
    if (cmd == "idempotents") return idempotents(a);
    if (cmd == "ses") return ses(a);
    if (cmd == "verify-theorem") return verify(a);
    throw InputError("unknown command '" + cmd + "'");
  }

 private:
  const Deck& deck_;
  const CliOptions& opts_;
  Report& rep_;

  void line(const std::string& key, const std::string& value) { rep_.lines.push_back(key + "=" + value); }
  void fail() { rep_.status = 1; }

  void check(const std::vector<std::string>& a) {
    arity(a, 2, 2, "check GRADING");
    const Grading& g = deck_.grading(a[1]);
    line("grading", a[1]);
    line("dim", std::to_string(g.algebra().dim()));
    line("group", g.group().format());
    line("axiom", "ok");
    const bool generic = verify_grading_generic(g.algebra(), g.group(), g.labels());
    line("generic", generic ? "ok" : "FAIL");
    if (!generic) fail();
    line("thin", yes_no(g.is_thin()));
  }

  void support(const std::vector<std::string>& a) {
    arity(a, 2, 2, "support GRADING");
    const Grading& g = deck_.grading(a[1]);
    const auto& names = g.algebra().basis_names();
    line("support.size", std::to_string(g.support_size()));
    for (std::size_t s = 0; s < g.support_size(); ++s) {
      line("component." + g.format_support(s),
           text::join(g.component(s), " ", [&](std::size_t i) { return names[i]; }));
    }
    const auto pp = product_pattern(g);
    line("pattern.nonzero", pp.nonzero.empty() ? "none" : text::join(pp.nonzero, " ", [&](const auto& st) {
      return "(" + g.format_support(st.first) + "," + g.format_support(st.second) + ")";
    }));
  }

  void universal(const std::vector<std::string>& a) {
    arity(a, 2, 2, "universal GRADING");
    const Grading& g = deck_.grading(a[1]);
    const UniversalGrading u = universal_group(g);
    line("U", u.U.format());
    for (std::size_t s = 0; s < g.support_size(); ++s) line("degU." + g.format_support(s), u.U.format(u.degU[s]));
  }

  void weyl(const std::vector<std::string>& a) {
    const std::string usage = "weyl GRADING [over FIELD]";
    arity(a, 2, 4, usage);
    const Grading& g = deck_.grading(a[1]);
    auto over = over_arg(a, 2, usage);
    if (opts_.mode != "closure" && opts_.mode != "rational") throw InputError("--mode must be closure or rational");
    PermGroup W;
    Grading shown = g;
    if (!over && opts_.mode == "closure") {
      W = weyl_closure(g);
      line("weyl.mode", "closure");
    } else {
      const Field K = over ? deck_.field(*over) : g.algebra().field();
      shown = grading_over(g, K);
      W = weyl_over_field(g, K, opts_.cap);
      line("weyl.mode", "rational");
      line("weyl.field", K.name());
    }
    line("weyl.order", std::to_string(W.order()));
    line("weyl.generators", join_perms(shown, W.generators()));
    line("weyl.elements", join_perms(shown, W.elements()));
  }

  // Grading read over the field of R.
  Grading over_ring(const Grading& g, const TestRing& R) { return grading_over(g, R.field()); }

  void points(const std::vector<std::string>& a) {
    const std::string usage = "points GRADING over RING [aut|stab|autgamma|diag]";
    arity(a, 4, 5, usage);
    const auto over = over_arg(a, 2, usage);
    const TestRing R = deck_.ring(*over);
    const Grading g = over_ring(deck_.grading(a[1]), R);
    const PointSet which = a.size() == 5 ? parse_point_set(a[4]) : PointSet::Aut;
    const auto pts = which == PointSet::Diag ? diag_points(g, R) : enumerate_points(g, R, which, opts_.cap);
    line("points.ring", R.name());
    line("points.set", point_set_name(which));
    line("points.count", std::to_string(pts.size()));
    for (const auto& p : pts) line("point", p.format());
  }

  void member(const std::vector<std::string>& a) {
    arity(a, 3, 3, "member GRADING MAP");
    const Deck::MapDecl& m = deck_.map(a[2]);
    const Grading g = over_ring(deck_.grading(a[1]), m.point.R);
    if (!(g.algebra() == deck_.algebra(m.algebra_ref).over(g.algebra().field()))) {
      throw InputError("map " + a[2] + " is not on the algebra of " + a[1]);
    }
    const PointMatrix& p = m.point;
    line("map", a[2]);
    line("ring", p.R.name());
    const bool aut = automorphism_membership(g.algebra(), p);
    line("aut", yes_no(aut));
    if (!aut) return;
    const bool stab = stab_membership(g, p);
    const auto diag = diag_membership(g, p);
    const auto bp = block_permutations(g, p);
    const bool cent = cent_membership_generic(g, p);
    const auto norm = norm_membership_generic(g, p);
    line("stab", yes_no(stab));
    line("diag", yes_no(diag.member));
    line("autgamma", yes_no(bp.ok));
    for (std::size_t b = 0; bp.ok && b < bp.blocks.size(); ++b) {
      line("autgamma.block." + std::to_string(b), format_permutation(g, bp.blocks[b].sigma));
    }
    if (!bp.ok) line("autgamma.reason", bp.reason);
    line("cent.generic", yes_no(cent));
    line("norm.generic", yes_no(norm.member));
    for (std::size_t b = 0; norm.member && b < norm.shifts.size(); ++b) {
      line("norm.shift." + std::to_string(b), format_permutation(g, norm.shifts[b].sigma));
    }
    if (bp.ok) {
      const auto dg = dgroup_norm_membership(g, p);
      line("dgroup.norm", dg.status == DGroupStatus::Member      ? "member"
                          : dg.status == DGroupStatus::NonMember ? "non-member"
                                                                 : "indeterminate");
      if (!dg.forced.empty()) line("dgroup.forced", text::join(dg.forced, " ", [](const auto& s) { return s; }));
      if (dg.status == DGroupStatus::NonMember) {
        line("dgroup.certificate",
             "(" + text::join(dg.relation, ",", [](std::int64_t v) { return std::to_string(v); }) + ") -> " +
                 dg.relation_value + " != 1");
      }
      if (!dg.note.empty()) line("dgroup.note", dg.note);
    }
    const bool ok = cent == stab && norm.member == bp.ok;
    line("theorem", ok ? "ok" : "FAIL");
    if (!ok) fail();
    // A non-trivial normalizer point while Diag has no non-trivial points over the base field.
    if (norm.member && !stab && g.algebra().field().is_finite()) {
      const auto base_diag = diag_points(g, TestRing::base_field(g.algebra().field()));
      if (base_diag.size() == 1) {
        rep_.lines.push_back("WARN normalizer point outside Stab although Diag(Gamma)(" + g.algebra().field().name() +
                             ") is trivial; the normalizer is not read off base-field points");
      }
    }
  }

  void idempotents(const std::vector<std::string>& a) {
    arity(a, 2, 2, "idempotents RING");
    const TestRing R = deck_.ring(a[1]);
    const auto& es = R.idempotents();
    line("ring", R.name());
    line("idempotents.count", std::to_string(es.size()));
    for (std::size_t i = 0; i < es.size(); ++i) line("idempotent." + std::to_string(i), R.format(es[i]));
  }

  void ses(const std::vector<std::string>& a) {
    const std::string usage = "ses GRADING over FIELD";
    arity(a, 4, 4, usage);
    const Field K = deck_.field(*over_arg(a, 2, usage));
    const SesReport r = ses_check(deck_.grading(a[1]), K, opts_.cap);
    line("ses.field", K.name());
    line("ses.autgamma", std::to_string(r.autgamma));
    line("ses.stab", std::to_string(r.stab));
    line("ses.weyl", std::to_string(r.weyl_order));
    if (r.closure_order) line("ses.closure", std::to_string(*r.closure_order));
    if (r.thin_count) line("ses.thin_count", std::to_string(*r.thin_count));
    line("ses.counts", r.counts_ok ? "ok" : "FAIL");
    line("ses.contained", r.contained ? "ok" : "FAIL");
    line("ses", r.ok() ? "ok" : "FAIL");
    if (!r.ok()) fail();
  }

  void verify(const std::vector<std::string>& a) {
    const std::string usage = "verify-theorem GRADING over RING";
    arity(a, 4, 4, usage);
    const TestRing R = deck_.ring(*over_arg(a, 2, usage));
    const Grading g = over_ring(deck_.grading(a[1]), R);
    TheoremTally t;
    if (R.is_finite() && enumeration_feasible(g, R, opts_.cap)) {
      line("source", "enumerated");
      t = theorem_tally_enumerated(g, R, opts_.cap);
    } else {
      std::mt19937_64 rng(kSampleSeed);
      line("source", "sampled");
      t = theorem_tally(g, sample_automorphisms(g, R, kSampleCount, rng));
    }
    const std::string of = "/" + std::to_string(t.points) + ")";
    rep_.lines.push_back(std::string("cent==stab: ") + (t.cent_agree == t.points ? "ok" : "FAIL") + " (" +
                         std::to_string(t.cent_agree) + of);
    rep_.lines.push_back(std::string("norm==autGamma: ") + (t.norm_agree == t.points ? "ok" : "FAIL") + " (" +
                         std::to_string(t.norm_agree) + of);
    line("stab.count", std::to_string(t.stab));
    line("autgamma.count", std::to_string(t.autgamma));
    if (!t.ok()) {
      line("first_failure", t.first_failure);
      fail();
    }
  }
};

}  // namespace

Report run_command(const Deck& deck, const std::vector<std::string>& args, const CliOptions& opts) {
  Report rep;
  try {
    if (opts.report != "plain") throw InputError("unsupported report format '" + opts.report + "'");
    Runner(deck, opts, rep).run(args);
  } catch (const IdentityViolation& e) {
    rep.lines.push_back(std::string("error: identity violated: ") + e.what());
    rep.status = 1;
  } catch (const Error& e) {
    rep.lines.push_back(std::string("error: ") + e.what());
    rep.status = 2;
  }
  return rep;
}

}  // namespace gw
