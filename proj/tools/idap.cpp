// idap: command-line front end.
//
// Exit codes: 0 ok, 1 usage or conflicting flags, 2 parse error,
// 3 hypotheses not satisfied (NotApplicable), 4 precondition refusal,
// 5 internal error. IDAP_THREADS sets the OpenMP worker count.

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "idap/empirical.hpp"
#include "idap/errors.hpp"
#include "idap/parser.hpp"
#include "idap/report.hpp"

using namespace idap;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kNotApplicable = 3, kRefused = 4, kInternal = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SystemFlags {
  std::string system;
  std::string system_file;
  std::optional<std::size_t> n;
  std::string box;
};

struct PsiFlags {
  std::string c = "1";
  std::string tau;
  std::string beta = "0";
};

struct FFlags {
  std::string s;
  std::string gamma = "0";
};

struct OutFlags {
  std::string format = "json";
  std::string output;
  std::string exec = "parallel";
};

void add_system(CLI::App* sc, SystemFlags& f, bool with_n = true) {
  sc->add_option("--system", f.system, "polynomials separated by ';', e.g. \"x1^2+x2^2; x1^2-x2^2\"");
  sc->add_option("--system-file", f.system_file, "file with one polynomial per line, or coefficient-map JSON");
  if (with_n) sc->add_option("--n", f.n, "number of variables (default: highest index used)");
  sc->add_option("--box", f.box, "domain box, e.g. \"0..1,0..1\" (default [0,1]^n)");
}

void add_psi(CLI::App* sc, PsiFlags& p, bool tau_required = true) {
  auto* t = sc->add_option("--tau", p.tau, "psi(r) = c r^-tau log(e+r)^-beta");
  if (tau_required) t->required();
  sc->add_option("--beta", p.beta, "log exponent of psi")->capture_default_str();
  sc->add_option("--c", p.c, "constant of psi")->capture_default_str();
}

void add_f(CLI::App* sc, FFlags& f) {
  sc->add_option("--s", f.s, "f(r) = r^s log(1/r)^gamma")->required();
  sc->add_option("--gamma", f.gamma, "log exponent of f")->capture_default_str();
}

void add_out(CLI::App* sc, OutFlags& o, bool csv) {
  auto* fmt = sc->add_option("--format", o.format, "output format")->capture_default_str();
  fmt->check(csv ? CLI::IsMember({"json", "csv"}) : CLI::IsMember({"json"}));
  sc->add_option("--output,-o", o.output, "write to a file instead of stdout");
}

BigRat rat(const std::string& text, const char* flag) {
  try {
    return BigRat::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool have_system(const SystemFlags& f) { return !f.system.empty() || !f.system_file.empty(); }

SystemDescriptor load_system(const SystemFlags& f) {
  if (!f.system.empty() && !f.system_file.empty()) throw UsageError("--system and --system-file are mutually exclusive");
  if (!have_system(f)) throw UsageError("a polynomial system is required (--system or --system-file)");
  SystemDescriptor sd;
  if (!f.system_file.empty()) {
    std::string text = slurp(f.system_file);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
      }
      sd = parse_system_json(j);
      if (f.n && *f.n != sd.n) throw UsageError("--n conflicts with \"n\" in the system file");
    } else {
      sd = parse_system(text, f.n);
    }
  } else {
    sd = parse_system(f.system, f.n);
  }
  if (!f.box.empty()) {
    if (sd.box) throw UsageError("--box conflicts with the box given in the system file");
    sd.box = parse_box(f.box);
  }
  if (sd.box && sd.box->size() != sd.n)
    throw UsageError("box has " + std::to_string(sd.box->size()) + " axes but n = " + std::to_string(sd.n));
  return sd;
}

VarietyContext context_of(const SystemDescriptor& sd) {
  try {
    return build_context(sd.polys, sd.box);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json system_json(const SystemDescriptor& sd, const VarietyContext& ctx) {
  json polys = json::array();
  for (std::size_t j = 0; j < sd.m(); ++j) polys.push_back({{"label", sd.labels[j]}, {"poly", sd.polys[j].str()}});
  return {{"n", ctx.n}, {"m", ctx.m}, {"d", ctx.d}, {"degrees", ctx.degrees}, {"polys", polys},
          {"box", to_json(ctx.box)}, {"lipschitz", ctx.lipschitz.str()}};
}

std::string canonical(const std::string& command, const SystemDescriptor* sd, const VarietyContext* ctx,
                      const json& params) {
  std::string s = command + "\n";
  if (sd) s += sd->str();
  if (ctx) s += "box " + to_json(ctx->box).dump() + "\n";
  return s + params.dump() + "\n";
}

Exec exec_of(const OutFlags& o) {
  if (o.exec == "serial") return Exec::serial;
  if (o.exec == "parallel") return Exec::parallel;
  throw UsageError("--exec must be serial or parallel");
}

void emit(const OutFlags& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + o.output);
  out << text;
}

void emit_json(const OutFlags& o, const json& env) { emit(o, env.dump(2) + "\n"); }

ApproxFunction psi_of(const PsiFlags& p) {
  try {
    return ApproxFunction::power_log(rat(p.c, "--c"), rat(p.tau, "--tau"), rat(p.beta, "--beta"));
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

DimFunction f_of(const FFlags& f) {
  try {
    return DimFunction::power_log(rat(f.s, "--s"), rat(f.gamma, "--gamma"));
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::int64_t> int_list(const std::string& text, const char* flag) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing characters");
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": bad integer '" + item + "'");
    }
  }
  return out;
}

void set_threads() {
  if (const char* t = std::getenv("IDAP_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(t, &end, 10);
    if (end != t && *end == '\0' && v > 0) omp_set_num_threads(static_cast<int>(v));
  }
}

}  // namespace

int main(int argc, char** argv) {
  set_threads();
  CLI::App app{"Intrinsic Diophantine approximation on polynomial graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  SystemFlags sys;
  PsiFlags psi;
  FFlags fdim;
  OutFlags out;
  std::optional<unsigned> n_flag;
  std::optional<unsigned> d_flag;
  std::int64_t q_max = 64;
  std::int64_t q_lo = 0;
  std::int64_t q_hi = 0;
  std::int64_t n_lo = -1;
  std::string windows;
  std::vector<std::string> points;
  std::string vector_text;
  std::size_t sample = 0;
  std::uint64_t seed = 1;
  std::string q_levels = "32,64,128,256";
  std::string eps_levels;
  std::string mode = "lower";
  bool with_balls = false;
  OffManifoldOptions om;

  auto* morph = app.add_subcommand("morphism-check", "decide whether F* is a morphism");
  add_system(morph, sys);
  add_out(morph, out, false);

  auto* heights = app.add_subcommand("heights", "heights of F(p/q) and F*(p/q), or of a rational vector");
  add_system(heights, sys);
  heights->add_option("--point", points, "rational point, e.g. \"1/2,1/2\" (repeatable)");
  heights->add_option("--vector", vector_text, "heights of a bare rational vector (no system)");
  heights->add_option("--q-max", q_max, "sampling range for --sample")->capture_default_str();
  heights->add_option("--sample", sample, "number of primitive points to draw with q <= q-max");
  heights->add_option("--seed", seed, "seed for --sample")->capture_default_str();
  add_out(heights, out, false);

  auto* bounds = app.add_subcommand("height-bounds", "ratios H(F(p/q)) / q^d for q <= q-max");
  add_system(bounds, sys);
  bounds->add_option("--q-max", q_max)->capture_default_str();
  bounds->add_option("--exec", out.exec, "serial or parallel")->capture_default_str();
  add_out(bounds, out, true);

  auto* verdict = app.add_subcommand("verdict", "zero-infinity law for intrinsic approximation on the graph");
  add_system(verdict, sys, false);
  verdict->add_option("--n", n_flag, "domain dimension (without --system)");
  verdict->add_option("--d", d_flag, "degree (without --system)");
  add_psi(verdict, psi);
  add_f(verdict, fdim);
  add_out(verdict, out, false);

  auto* classical = app.add_subcommand("classical-verdict", "Jarnik / Khintchine law on R^n");
  classical->add_option("--n", n_flag)->required();
  add_psi(classical, psi);
  add_f(classical, fdim);
  add_out(classical, out, false);

  auto* dimension = app.add_subcommand("dimension", "dim = (1 + n) / (d tau)");
  add_system(dimension, sys, false);
  dimension->add_option("--n", n_flag, "domain dimension (without --system)");
  dimension->add_option("--d", d_flag, "degree (without --system)");
  dimension->add_option("--tau", psi.tau)->required();
  add_out(dimension, out, false);

  auto* estimate = app.add_subcommand("estimate-dim", "box-counting estimate of the dimension");
  add_system(estimate, sys);
  estimate->add_option("--tau", psi.tau)->required();
  estimate->add_option("--q-levels", q_levels, "stage sizes Q; stage window is (Q/2, Q]")->capture_default_str();
  estimate->add_option("--eps-levels", eps_levels, "grid sides, one per stage (default psi(Q^d)/K)");
  estimate->add_option("--exec", out.exec)->capture_default_str();
  add_out(estimate, out, true);

  auto* tail = app.add_subcommand("tail-sum", "S1 and S2 over N < q <= Q");
  add_system(tail, sys);
  add_psi(tail, psi);
  add_f(tail, fdim);
  tail->add_option("--N", n_lo, "lower end (exclusive)");
  tail->add_option("--Q", q_hi, "upper end (inclusive)");
  tail->add_option("--windows", windows, "comma list of Q; sums over each (Q, 2Q]");
  tail->add_option("--exec", out.exec)->capture_default_str();
  add_out(tail, out, false);

  auto* intrinsic = app.add_subcommand("check-intrinsic", "search off-manifold rationals close to the graph");
  add_system(intrinsic, sys);
  add_psi(intrinsic, psi);
  intrinsic->add_option("--d-min", om.d_min, "heights D > d-min")->capture_default_str();
  intrinsic->add_option("--d-max", om.d_max, "heights D <= d-max")->capture_default_str();
  intrinsic->add_option("--max-depth", om.max_depth)->capture_default_str();
  intrinsic->add_option("--node-budget", om.node_budget)->capture_default_str();
  intrinsic->add_option("--exec", out.exec)->capture_default_str();
  add_out(intrinsic, out, false);

  auto* cover = app.add_subcommand("cover", "finite-stage cover by balls around F-images");
  add_system(cover, sys);
  add_psi(cover, psi);
  cover->add_option("--q-lo", q_lo)->required();
  cover->add_option("--q-hi", q_hi)->required();
  cover->add_option("--mode", mode)->check(CLI::IsMember({"lower", "upper"}))->capture_default_str();
  cover->add_flag("--balls", with_balls, "include every ball");
  cover->add_option("--exec", out.exec)->capture_default_str();
  add_out(cover, out, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* sc = app.get_subcommands().front();
  const std::string cmd = sc->get_name();
  try {
    if (sc == morph) {
      auto sd = load_system(sys);
      auto ctx = context_of(sd);
      json payload{{"system", system_json(sd, ctx)}, {"certificate", to_json(ctx.morphism)}};
      emit_json(out, make_envelope(cmd, canonical(cmd, &sd, &ctx, json::object()), payload));
      return kOk;
    }

    if (sc == heights) {
      if (!vector_text.empty()) {
        if (have_system(sys) || !points.empty() || sample) throw UsageError("--vector excludes --system, --point and --sample");
        RatVec v = RatVec::parse(vector_text);
        ProjPoint pp = to_projective(v);
        json payload{{"vector", to_json(v)},
                     {"affine_height", affine_height(v).str()},
                     {"projective", pp.str()},
                     {"projective_height", projective_height(pp).str()}};
        emit_json(out, make_envelope(cmd, canonical(cmd, nullptr, nullptr, {{"vector", v.str()}}), payload));
        return kOk;
      }
      auto sd = load_system(sys);
      auto ctx = context_of(sd);
      if (!points.empty() && sample) throw UsageError("--point and --sample are mutually exclusive");
      if (points.empty() && !sample) throw UsageError("give --point, --sample or --vector");
      std::vector<RatVec> xs;
      for (const auto& p : points) {
        RatVec x = RatVec::parse(p);
        if (x.size() != ctx.n) throw UsageError("--point " + p + " must have " + std::to_string(ctx.n) + " coordinates");
        xs.push_back(std::move(x));
      }
      if (sample) {
        if (q_max < 1) throw UsageError("--q-max must be >= 1");
        auto all = enumerate_primitive(ctx, 1, q_max);
        std::vector<PrimitivePoint> pick;
        std::mt19937_64 rng(seed);
        std::sample(all.begin(), all.end(), std::back_inserter(pick), std::min(sample, all.size()), rng);
        for (const auto& p : pick) xs.push_back(p.value());
      }
      json rows = json::array();
      for (const auto& x : xs) {
        Evaluated fx = apply_F(ctx, x);
        BigInt h = affine_height(fx.point);
        BigInt q = affine_height(x);
        json row{{"x", to_json(x)},
                 {"F", to_json(fx.point)},
                 {"outside_box", fx.outside_box},
                 {"q", q.str()},
                 {"affine_height", h.str()},
                 {"ratio", BigRat(h, q.pow(ctx.d)).str()}};
        ProjPoint img = apply_Fstar(ctx, to_projective(x));
        row["Fstar"] = img.str();
        row["projective_height"] = projective_height(img).str();
        rows.push_back(row);
      }
      json params{{"points", points}, {"sample", sample}, {"q_max", q_max}, {"seed", seed}};
      json payload{{"system", system_json(sd, ctx)}, {"points", rows}};
      emit_json(out, make_envelope(cmd, canonical(cmd, &sd, &ctx, params), payload));
      return kOk;
    }

    if (sc == bounds) {
      auto sd = load_system(sys);
      auto ctx = context_of(sd);
      if (q_max < 1) throw UsageError("--q-max must be >= 1");
      HeightBoundReport r = height_bound_scan(ctx, q_max, exec_of(out));
      if (out.format == "csv") {
        emit(out, to_csv(r));
      } else {
        json payload{{"system", system_json(sd, ctx)}, {"report", to_json(r)}};
        emit_json(out, make_envelope(cmd, canonical(cmd, &sd, &ctx, {{"q_max", q_max}}), payload));
      }
      return kOk;
    }

    if (sc == verdict || sc == dimension) {
      std::optional<SystemDescriptor> sd;
      std::optional<VarietyContext> ctx;
      unsigned n = 0;
      unsigned d = 0;
      std::optional<bool> morphism;
      if (have_system(sys)) {
        if (n_flag || d_flag) throw UsageError("--n/--d conflict with --system (they are read from the system)");
        sd = load_system(sys);
        ctx = context_of(*sd);
        n = static_cast<unsigned>(ctx->n);
        d = ctx->d;
        morphism = ctx->morphism.holds;
      } else {
        if (!n_flag || !d_flag) throw UsageError("give --system, or both --n and --d");
        if (*n_flag == 0 || *d_flag == 0) throw UsageError("--n and --d must be >= 1");
        n = *n_flag;
        d = *d_flag;
      }
      json params{{"n", n}, {"d", d}};
      json payload;
      bool not_applicable = false;
      if (sc == verdict) {
        ApproxFunction ps = psi_of(psi);
        DimFunction f = f_of(fdim);
        Verdict v = series_verdict(ps, f, n, d, morphism);
        params["psi"] = to_json(ps);
        params["f"] = to_json(f);
        payload = to_json(v);
        payload["psi"] = to_json(ps);
        payload["f"] = to_json(f);
        not_applicable = v.outcome == Outcome::not_applicable;
      } else {
        BigRat tau = rat(psi.tau, "--tau");
        if (tau.sign() <= 0) throw UsageError("--tau must be positive");
        DimensionResult r = dimension_formula(n, d, tau, morphism);
        params["tau"] = tau.str();
        payload = to_json(r);
        payload["tau"] = tau.str();
        not_applicable = !r.applicable || (morphism && !*morphism);
      }
      payload["n"] = n;
      payload["d"] = d;
      if (sd) payload["system"] = system_json(*sd, *ctx);
      emit_json(out, make_envelope(cmd, canonical(cmd, sd ? &*sd : nullptr, ctx ? &*ctx : nullptr, params), payload));
      return not_applicable ? kNotApplicable : kOk;
    }

    if (sc == classical) {
      if (*n_flag == 0) throw UsageError("--n must be >= 1");
      ApproxFunction ps = psi_of(psi);
      DimFunction f = f_of(fdim);
      Verdict v = classical_verdict(ps, f, *n_flag);
      json payload = to_json(v);
      payload["n"] = *n_flag;
      payload["psi"] = to_json(ps);
      payload["f"] = to_json(f);
      json params{{"n", *n_flag}, {"psi", to_json(ps)}, {"f", to_json(f)}};
      emit_json(out, make_envelope(cmd, canonical(cmd, nullptr, nullptr, params), payload));
      return v.outcome == Outcome::not_applicable ? kNotApplicable : kOk;
    }

    if (sc == estimate) {
      auto sd = load_system(sys);
      auto ctx = context_of(sd);
      BigRat tau = rat(psi.tau, "--tau");
      if (tau.sign() <= 0) throw UsageError("--tau must be positive");
      auto qs = int_list(q_levels, "--q-levels");
      std::optional<std::vector<BigRat>> eps;
      if (!eps_levels.empty()) {
        eps.emplace();
        std::stringstream ss(eps_levels);
        std::string item;
        while (std::getline(ss, item, ',')) eps->push_back(rat(item, "--eps-levels"));
      }
      DimensionEstimate e;
      try {
        e = estimate_dimension(ctx, tau, qs, eps, exec_of(out));
      } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
      }
      if (out.format == "csv") {
        emit(out, to_csv(e));
      } else {
        json params{{"tau", tau.str()}, {"q_levels", qs}, {"eps_levels", eps_levels}};
        json payload{{"system", system_json(sd, ctx)}, {"estimate", to_json(e)}};
        emit_json(out, make_envelope(cmd, canonical(cmd, &sd, &ctx, params), payload));
      }
      return kOk;
    }

    if (sc == tail) {
      auto sd = load_system(sys);
      auto ctx = context_of(sd);
      ApproxFunction ps = psi_of(psi);
      DimFunction f = f_of(fdim);
      const bool range = n_lo >= 0 || q_hi > 0;
      if (range && !windows.empty()) throw UsageError("--N/--Q conflict with --windows");
      std::vector<std::pair<std::int64_t, std::int64_t>> spans;
      if (!windows.empty()) {
        for (auto q : int_list(windows, "--windows")) {
          if (q < 1) throw UsageError("--windows entries must be >= 1");
          spans.emplace_back(q, 2 * q);
        }
      } else {
        if (n_lo < 0 || q_hi <= 0) throw UsageError("give --N and --Q, or --windows");
        if (q_hi < n_lo) throw UsageError("--Q must be >= --N");
        spans.emplace_back(n_lo, q_hi);
      }
      json sums = json::array();
      for (auto [a, b] : spans) sums.push_back(to_json(tail_sum(ctx, ps, f, a, b, exec_of(out))));
      json params{{"psi", to_json(ps)}, {"f", to_json(f)}, {"spans", spans}};
      json payload{{"system", system_json(sd, ctx)}, {"psi", to_json(ps)}, {"f", to_json(f)}, {"sums", sums}};
      emit_json(out, make_envelope(cmd, canonical(cmd, &sd, &ctx, params), payload));
      return kOk;
    }

    if (sc == intrinsic) {
      auto sd = load_system(sys);
      auto ctx = context_of(sd);
      ApproxFunction ps = psi_of(psi);
      if (om.d_max < 1 || om.d_min < 0 || om.d_min >= om.d_max) throw UsageError("need 0 <= --d-min < --d-max");
      OffManifoldReport r = off_manifold_check(ctx, ps, om, exec_of(out));
      json params{{"psi", to_json(ps)}, {"d_min", om.d_min}, {"d_max", om.d_max}, {"max_depth", om.max_depth},
                  {"node_budget", om.node_budget}};
      json payload{{"system", system_json(sd, ctx)}, {"psi", to_json(ps)}, {"result", to_json(r)}};
      emit_json(out, make_envelope(cmd, canonical(cmd, &sd, &ctx, params), payload));
      return kOk;
    }

    if (sc == cover) {
      auto sd = load_system(sys);
      auto ctx = context_of(sd);
      ApproxFunction ps = psi_of(psi);
      if (q_lo < 0 || q_lo >= q_hi) throw UsageError("need 0 <= --q-lo < --q-hi");
      auto c = build_cover(ctx, ps, q_lo, q_hi, mode == "lower" ? RadiusMode::lower : RadiusMode::upper, exec_of(out));
      json params{{"psi", to_json(ps)}, {"q_lo", q_lo}, {"q_hi", q_hi}, {"mode", mode}, {"balls", with_balls}};
      json payload{{"system", system_json(sd, ctx)}, {"psi", to_json(ps)}, {"cover", to_json(c, with_balls)}};
      emit_json(out, make_envelope(cmd, canonical(cmd, &sd, &ctx, params), payload));
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
