// mate4: sample curves, check and construct Bertrand/Mannheim mates,
// reconstruct framed curves from curvature, test congruence, verify the
// worked examples.
//
// Exit codes: 0 pass, 1 condition failed, 2 usage or invalid input, 3 I/O error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mate4/builtin_curves.hpp"
#include "mate4/csv_io.hpp"
#include "mate4/error.hpp"
#include "mate4/mates.hpp"
#include "mate4/reconstruct.hpp"
#include "mate4/stencil.hpp"
#include "mate4/report_json.hpp"
#include "mate4/verify.hpp"

using namespace mate4;
using json = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct CurveOptions {
  std::string name = "example38";
  std::string path;
  double a = 1.0;
  double b = std::sqrt(3.0);
  std::vector<double> range;
  std::size_t n = 629;
  bool finite_diff = false;
  double step = 1e-3;
  int reortho = 10;
};

void add_curve_options(CLI::App* app, CurveOptions& o) {
  app->add_option("--curve", o.name, "example38 | torus | file | curvature_file")
      ->check(CLI::IsMember({"example38", "torus", "file", "curvature_file"}));
  app->add_option("--path", o.path, "input CSV for file / curvature_file");
  app->add_option("--a", o.a, "torus parameter a");
  app->add_option("--b", o.b, "torus parameter b");
  app->add_option("--range", o.range, "parameter range t0 t1")->expected(2);
  app->add_option("--n", o.n, "number of samples (>= 9)");
  app->add_flag("--finite-diff", o.finite_diff, "extract curvature by finite differences");
  app->add_option("--step", o.step, "integration step for curvature_file");
  app->add_option("--reortho", o.reortho, "frame repair cadence for curvature_file");
}

// A sampled framed curve and its curvature at the same nodes.
struct Loaded {
  std::vector<FramedNode> nodes;
  std::vector<FramedCurvature> curv;
  double step = 0.0;
  std::optional<TaylorCurve> regular;  // closed-form regular curve, when there is one
  std::optional<CurveSource> sampled;  // sampled regular curve (file)
  std::size_t margin = 0;              // nodes of `sampled` skipped at each end
};

Grid grid_for(const CurveOptions& o) {
  if (o.n < 9) throw Error(ErrorCode::InvalidInput, "--n must be at least 9");
  const double t0 = o.range.empty() ? 0.0 : o.range[0];
  const double t1 = o.range.empty() ? 2 * std::numbers::pi : o.range[1];
  if (!(t1 > t0)) throw Error(ErrorCode::InvalidInput, "--range needs t1 > t0");
  return Grid::spanning(t0, t1, o.n);
}

std::vector<FramedCurvature> fd_curvature(const TaylorFramed& fc, const Grid& g) {
  const Grid padded{g.t0 - 2 * g.step, g.step, g.count + 4};
  const auto all = framed_curvature(differentiate_nodes(framed_nodes(fc, padded)));
  return {all.begin() + 2, all.begin() + 2 + static_cast<long>(g.count)};
}

Loaded load_closed_form(const TaylorFramed& fc, const Grid& g, bool finite_diff) {
  Loaded l;
  l.step = g.step;
  l.nodes = framed_nodes(fc, g);
  l.curv = finite_diff ? fd_curvature(fc, g) : framed_curvature(framed_points(fc, g));
  return l;
}

Loaded load(const CurveOptions& o) {
  if (o.name == "example38") {
    Loaded l = load_closed_form(example38::framed(), grid_for(o), o.finite_diff);
    return l;
  }
  if (o.name == "torus") {
    Loaded l = load_closed_form(torus::framed(o.a, o.b), grid_for(o), o.finite_diff);
    l.regular = torus::curve(o.a, o.b);
    return l;
  }
  if (o.path.empty()) throw Error(ErrorCode::InvalidInput, "--path is required for --curve " + o.name);
  if (o.name == "file") {
    const CurveTable tab = read_curve_csv(o.path);
    if (tab.t.size() < 9) throw Error(ErrorCode::InsufficientSamples, "curve file needs at least 9 rows");
    const double h = uniform_spacing(tab.t);
    Loaded l;
    l.sampled = CurveSource::sampled(tab.t.front(), h, tab.x);
    l.margin = 3;
    if (tab.t.size() < 2 * l.margin + 5) throw Error(ErrorCode::InsufficientSamples, "curve file is too short");
    l.step = h;
    for (std::size_t i = l.margin; i + l.margin < tab.t.size(); ++i) {
      const auto f = frenet_general(l.sampled->jet(tab.t[i], 3));
      l.nodes.push_back({tab.t[i], tab.x[i], MovingFrame::from_vectors(f.n1, f.n2, f.n3)});
    }
    l.curv = framed_curvature(differentiate_nodes(l.nodes));
    return l;
  }
  const CurvatureTable tab = read_curvature_csv(o.path);
  if (tab.t.size() < 9) throw Error(ErrorCode::InsufficientSamples, "curvature file needs at least 9 rows");
  const double h = uniform_spacing(tab.t);
  const auto spec = CurvatureSpec::from_table(tab.t.front(), h, tab.k);
  const MovingFrame e = MovingFrame::from_vectors(basis(0), basis(1), basis(2));
  Loaded l;
  l.step = h;
  // Integrate on the finer of the two steps, then keep the table nodes.
  const auto sub = static_cast<std::size_t>(std::max(1.0, std::ceil(h / o.step - 1e-9)));
  const auto fine = integrate_framed(spec, Vec4{}, e, tab.t.front(), tab.t.back(), {h / static_cast<double>(sub), o.reortho});
  for (std::size_t i = 0; i < fine.size(); i += sub) l.nodes.push_back(fine[i]);
  l.curv = tab.k;
  return l;
}

std::vector<double> params_of(const std::vector<FramedNode>& nodes) {
  std::vector<double> t;
  for (const auto& n : nodes) t.push_back(n.t);
  return t;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

json framed_rows(const std::vector<FramedNode>& nodes) {
  json rows = json::array();
  for (const auto& n : nodes) {
    json r = json::array({n.t});
    for (double v : n.gamma.x) r.push_back(v);
    for (int k = 1; k <= 3; ++k) {
      for (double v : n.frame.nu(k).x) r.push_back(v);
    }
    rows.push_back(r);
  }
  return rows;
}

json curvature_rows(const std::vector<double>& t, const std::vector<FramedCurvature>& k) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    json r = json::array({t[i]});
    for (double v : k[i].values()) r.push_back(v);
    rows.push_back(r);
  }
  return rows;
}

int cmd_sample(const CurveOptions& o, const std::string& out, const std::string& format) {
  const Loaded l = load(o);
  const auto t = params_of(l.nodes);
  if (format == "json") {
    json j;
    j["framed_columns"] = "t,x1,x2,x3,x4,n11,n12,n13,n14,n21,n22,n23,n24,n31,n32,n33,n34";
    j["framed"] = framed_rows(l.nodes);
    j["curvature_columns"] = "t,l1,l2,l3,l4,l5,l6,alpha";
    j["curvature"] = curvature_rows(t, l.curv);
    write_json(out + ".json", j);
  } else {
    write_framed_csv(out + "_framed.csv", l.nodes);
    write_curvature_csv(out + "_curvature.csv", {t, l.curv});
  }
  std::printf("wrote %zu samples\n", l.nodes.size());
  return kPass;
}

// Frenet curvatures with arc-length derivatives at the loaded nodes.
std::vector<KappaJet> kappa_jets(const Loaded& l) {
  std::vector<KappaJet> out;
  if (l.regular) {
    for (const auto& n : l.nodes) out.push_back(kappa_jet(*l.regular, n.t));
    return out;
  }
  if (!l.sampled) throw Error(ErrorCode::InvalidInput, "--as-regular needs a regular curve (torus or file)");
  // Sampled curves: kappa from finite-difference jets, derivatives by
  // differentiating the tables in t and converting with the speed.
  std::vector<double> k1, k2, k3, speed;
  for (const auto& n : l.nodes) {
    const auto j = l.sampled->jet(n.t, 4);
    const auto f = frenet_general(j);
    k1.push_back(f.k1);
    k2.push_back(f.k2);
    k3.push_back(f.k3);
    speed.push_back(norm(j.d[1]));
  }
  auto ds = [&](const std::vector<double>& v) {
    auto d = differentiate_table<double>(std::span<const double>(v), l.step);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] /= speed[i];
    return d;
  };
  const std::vector<double>* src[3] = {&k1, &k2, &k3};
  std::vector<std::array<std::vector<double>, 4>> tabs(3);
  for (int c = 0; c < 3; ++c) {
    tabs[c][0] = *src[c];
    for (int k = 1; k < 4; ++k) tabs[c][k] = ds(tabs[c][k - 1]);
  }
  for (std::size_t i = 0; i < l.nodes.size(); ++i) {
    KappaJet j;
    for (int k = 0; k < 4; ++k) {
      j.k1[k] = tabs[0][k][i];
      j.k2[k] = tabs[1][k][i];
      j.k3[k] = tabs[2][k][i];
    }
    out.push_back(j);
  }
  return out;
}

std::vector<FrenetApparatus> frenet_at_nodes(const Loaded& l) {
  std::vector<FrenetApparatus> out;
  for (const auto& n : l.nodes) {
    out.push_back(l.regular ? frenet_general(taylor_jet(*l.regular, n.t)) : frenet_general(l.sampled->jet(n.t, 4)));
  }
  return out;
}

int finish_report(const ConditionReport& rep, const std::string& out) {
  write_json(out + "_report.json", to_json(rep));
  std::printf("verdict: %s  residual_sup: %s\n", verdict_name(rep.verdict).c_str(),
              format_double(rep.residual_sup).c_str());
  for (const auto& [k, v] : rep.details) std::printf("  %s: %s\n", k.c_str(), format_double(v).c_str());
  return rep.passed() ? kPass : kFail;
}

int mate_regular(const Loaded& l, double lambda, const std::string& kind, double tol, const std::string& out) {
  if (!l.regular && !l.sampled) throw Error(ErrorCode::InvalidInput, "--as-regular needs a regular curve (torus or file)");
  const auto fr = frenet_at_nodes(l);
  CurveTable mate;
  for (std::size_t i = 0; i < l.nodes.size(); ++i) {
    mate.t.push_back(l.nodes[i].t);
    mate.x.push_back(l.nodes[i].gamma + lambda * fr[i].n1);
  }
  write_curve_csv(out + "_mate.csv", mate);

  if (kind == "bertrand") {
    std::vector<double> k3;
    for (const auto& f : fr) k3.push_back(f.k3);
    const auto rep = regular_bertrand_obstruction(k3, tol);
    if (!rep.passed()) std::fprintf(stderr, "obstruction: kappa3 nonzero\n");
    return finish_report(rep, out);
  }
  const auto jets = kappa_jets(l);
  const auto rep = kind == "mannheim2" ? check_second_mannheim_regular(jets, lambda, tol)
                                       : check_third_mannheim_regular(jets, lambda, tol);
  if (rep.passed() && l.regular) {
    // Report which sign the normal correspondence took.
    const auto mc = normal_offset(*l.regular, lambda);
    std::vector<Vec4> n1, nb;
    for (std::size_t i = 0; i < l.nodes.size(); ++i) {
      const auto f = frenet_general(taylor_jet(mc, l.nodes[i].t));
      n1.push_back(fr[i].n1);
      nb.push_back(kind == "mannheim2" ? f.n2 : f.n3);
    }
    const SignMatch sm = match_up_to_sign(n1, nb);
    std::printf("n1 = %cnbar%c (residual %s)\n", sm.sign > 0 ? '+' : '-', kind == "mannheim2" ? '2' : '3',
                format_double(sm.residual).c_str());
  }
  return finish_report(rep, out);
}

int cmd_mate(const CurveOptions& o, double lambda, const std::string& kind, bool as_regular,
             std::optional<double> psi, double tol, const std::string& out) {
  if (lambda == 0.0) throw Error(ErrorCode::InvalidInput, "--lambda must be nonzero");
  const Loaded l = load(o);
  if (as_regular) return mate_regular(l, lambda, kind, tol, out);

  ConditionReport rep;
  MateParams params;
  if (o.name == "torus") {
    const auto jets = regular_framed_jets(l.curv, l.step);
    const auto r = check_bertrand_regular_framed(jets, lambda, tol);
    rep = r.report;
    params = r.params;
  } else {
    if (psi) {
      params.lambda = lambda;
      params.psi.assign(l.curv.size(), *psi);
      params.theta = bertrand_theta(l.curv, lambda, params.psi);
      params.phi.assign(l.curv.size(), 0.0);
    } else {
      params = bertrand_angles(l.curv, lambda);
    }
    rep = check_bertrand_framed(l.curv, params, tol);
  }
  if (rep.passed()) {
    auto mate = construct_bertrand_mate(l.nodes, l.curv, params, tol);
    if (kind == "mannheim2") mate = mannheim_permute(mate, MannheimKind::second);
    if (kind == "mannheim3") mate = mannheim_permute(mate, MannheimKind::third);
    write_framed_csv(out + "_mate.csv", mate);
  }
  return finish_report(rep, out);
}

int cmd_reconstruct(const std::string& path, double step, int reortho, const std::string& out) {
  CurveOptions o;
  o.name = "curvature_file";
  o.path = path;
  o.step = step;
  o.reortho = reortho;
  const Loaded l = load(o);
  write_framed_csv(out + "_framed.csv", l.nodes);
  std::printf("wrote %zu samples\n", l.nodes.size());
  return kPass;
}

int cmd_congruence(const std::string& a, const std::string& b, double tol, const std::string& out) {
  const auto fa = read_framed_csv(a);
  const auto fb = read_framed_csv(b);
  const auto r = congruence_check(fa, fb, tol);
  json j;
  j["congruent"] = r.has_value();
  if (r) {
    json rot = json::array();
    for (const auto& row : r->rotation.m) rot.push_back(json(std::vector<double>(row.begin(), row.end())));
    j["rotation"] = rot;
    j["translation"] = std::vector<double>(r->translation.x.begin(), r->translation.x.end());
    j["residual"] = r->residual;
    j["curvature_gap"] = r->curvature_gap;
  }
  if (!out.empty()) write_json(out, j);
  std::printf("%s\n", j.dump(2).c_str());
  return r ? kPass : kFail;
}

int cmd_verify(std::optional<double> tol, const std::string& only, unsigned long long seed,
               const std::string& out) {
  VerifyOptions opts;
  opts.tol = tol;
  opts.only = only;
  opts.seed = seed;
  if (!only.empty()) {
    const auto tags = verification_tags();
    if (std::find(tags.begin(), tags.end(), only) == tags.end()) {
      throw Error(ErrorCode::InvalidInput, "unknown check group '" + only + "'");
    }
  }
  const auto results = run_verification(opts);
  bool all = !results.empty();
  json checks = json::array();
  for (const auto& r : results) {
    std::printf("[c%d] %s%s\n", r.criterion, describe(r).c_str(),
                r.pass ? "" : (r.kind == CheckResult::Kind::at_most ? "  tolerance-exceeded" : ""));
    all = all && r.pass;
    json c;
    c["criterion"] = r.criterion;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["value"] = r.value;
    c["limit"] = r.lo;
    if (r.kind == CheckResult::Kind::in_range) c["upper"] = r.hi;
    if (!r.note.empty()) c["note"] = r.note;
    checks.push_back(c);
  }
  json summary;
  summary["pass"] = all;
  summary["checks"] = checks;
  if (!out.empty()) write_json(out, summary);
  std::printf("%s\n", all ? "all checks passed" : "some checks failed");
  return all ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bertrand and Mannheim mates of regular and framed curves in R^4"};
  app.require_subcommand(1);

  CurveOptions sample_opts;
  std::string sample_out = "sample", sample_format = "csv";
  auto* sample = app.add_subcommand("sample", "write a framed curve and its curvature");
  add_curve_options(sample, sample_opts);
  sample->add_option("--out", sample_out, "output prefix");
  sample->add_option("--format", sample_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  CurveOptions mate_opts;
  double lambda = 0.0, mate_tol = 1e-8;
  std::string kind = "bertrand", mate_out = "mate";
  bool as_regular = false, as_framed = false;
  std::optional<double> psi;
  auto* mate = app.add_subcommand("mate", "check the mate conditions and construct the mate");
  add_curve_options(mate, mate_opts);
  mate->add_option("--lambda", lambda, "offset distance")->required();
  mate->add_option("--kind", kind, "bertrand | mannheim2 | mannheim3")
      ->check(CLI::IsMember({"bertrand", "mannheim2", "mannheim3"}));
  auto* fr = mate->add_flag("--as-framed", as_framed, "framed-curve theory (default)");
  auto* rg = mate->add_flag("--as-regular", as_regular, "regular-curve theory (Frenet frame)");
  fr->excludes(rg);
  mate->add_option("--psi", psi, "use this constant psi instead of the canonical branch");
  mate->add_option("--tol", mate_tol, "equality tolerance")->check(CLI::PositiveNumber);
  mate->add_option("--out", mate_out, "output prefix");

  std::string rec_in, rec_out = "reconstructed";
  double rec_step = 1e-3;
  int rec_reortho = 10;
  auto* rec = app.add_subcommand("reconstruct", "integrate a curvature table into a framed curve");
  rec->add_option("--curvature", rec_in, "curvature CSV")->required();
  rec->add_option("--step", rec_step, "integration step")->check(CLI::PositiveNumber);
  rec->add_option("--reortho", rec_reortho, "frame repair cadence")->check(CLI::PositiveNumber);
  rec->add_option("--out", rec_out, "output prefix");

  std::string cong_a, cong_b, cong_out;
  double cong_tol = 1e-6;
  auto* cong = app.add_subcommand("congruence", "find the rigid motion taking one framed curve to another");
  cong->add_option("--a", cong_a, "first framed-curve CSV")->required();
  cong->add_option("--b", cong_b, "second framed-curve CSV")->required();
  cong->add_option("--tol", cong_tol, "tolerance")->check(CLI::PositiveNumber);
  cong->add_option("--out", cong_out, "JSON output");

  std::optional<double> ver_tol;
  std::string ver_only, ver_out;
  unsigned long long seed = 20240611;
  auto* ver = app.add_subcommand("verify-paper", "run the worked-example and invariant checks");
  ver->add_option("--tol", ver_tol, "replace every residual threshold")->check(CLI::PositiveNumber);
  ver->add_option("--only", ver_only, "run one group (c1..c8, example38, torus, ...)");
  ver->add_option("--seed", seed, "seed for randomized checks");
  ver->add_option("--out", ver_out, "JSON summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*sample) return cmd_sample(sample_opts, sample_out, sample_format);
    if (*mate) return cmd_mate(mate_opts, lambda, kind, as_regular, psi, mate_tol, mate_out);
    if (*rec) return cmd_reconstruct(rec_in, rec_step, rec_reortho, rec_out);
    if (*cong) return cmd_congruence(cong_a, cong_b, cong_tol, cong_out);
    if (*ver) return cmd_verify(ver_tol, ver_only, seed, ver_out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (e.code() == ErrorCode::Io) return kIo;
    if (e.code() == ErrorCode::ConditionViolated || e.code() == ErrorCode::JointlyDegenerate) return kFail;
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
