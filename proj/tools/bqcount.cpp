// Command-line front end.  Every subcommand prints a one-line summary and,
// when --out DIR is given, writes <subcommand>.jsonl (one result envelope
// per line) and <subcommand>.csv into that directory.  Exit codes: 0 on
// success, 1 on usage errors, 2 when a resource guard aborts the run.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bq/cubic_pair.hpp"
#include "bq/density.hpp"
#include "bq/expsum.hpp"
#include "bq/kernel.hpp"
#include "bq/predict.hpp"
#include "bq/quartic.hpp"
#include "bq/reduce.hpp"
#include "bq/report.hpp"
#include "bq/selmer.hpp"
#include "bq/siegel.hpp"
#include "bq/sigma.hpp"
#include "bq/solubility.hpp"
#include "bq/verify.hpp"

namespace {

using nlohmann::json;
using namespace bq;

struct Ctx {
  std::string out_dir;
  std::string config_path;
  int threads = 0;
  u64 seed = 1;
  int exit_code = 0;
};

std::vector<i64> parse_i64_list(const std::string& text, size_t expect, const char* what) {
  std::vector<i64> out;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    try {
      out.push_back(std::stoll(token));
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(what) + ": bad integer '" + token + "'");
    }
  }
  if (expect && out.size() != expect)
    throw CLI::ValidationError(std::string(what) + ": expected " + std::to_string(expect) +
                               " comma-separated integers");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    try {
      out.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(what) + ": bad number '" + token + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError(std::string(what) + ": empty list");
  return out;
}

BinaryQuarticForm form_from_list(const std::vector<i64>& v) {
  return {bint(v[0]), bint(v[1]), bint(v[2]), bint(v[3]), bint(v[4])};
}

json form_json(const BinaryQuarticForm& F) {
  return json::array({dec(F.a), dec(F.b), dec(F.c), dec(F.d), dec(F.e)});
}

json pair_json(const CubicPair& v) {
  return json::array({dec(v.first.a), dec(v.first.b), dec(v.first.c), dec(v.first.d),
                      dec(v.second.a), dec(v.second.b), dec(v.second.c), dec(v.second.d)});
}

json orbit_json(const OrbitRecord& rec) {
  json j;
  j["representative"] = form_json(rec.representative);
  j["I"] = dec(rec.I);
  j["J"] = dec(rec.J);
  if (rec.soluble_everywhere) j["soluble_everywhere"] = *rec.soluble_everywhere;
  j["forms_explored"] = rec.forms_explored;
  j["minimal_forms"] = rec.minimal_forms;
  j["in_family"] = rec.in_family;
  return j;
}

std::string stem_of(const std::string& name) {
  std::string s = name;
  for (char& ch : s)
    if (ch == ' ') ch = '_';
  return s;
}

void emit(const Ctx& ctx, const std::string& name,
          const std::map<std::string, std::string>& params, const std::vector<json>& payloads,
          const CsvWriter* csv) {
  if (ctx.out_dir.empty()) return;
  RunConfig config;
  config.subcommand = name;
  config.params = params;
  config.threads = ctx.threads;
  config.seed = ctx.seed;
  config.out_dir = ctx.out_dir;
  std::string lines;
  for (const json& payload : payloads) lines += envelope_line(make_envelope(config, payload)) + "\n";
  write_text_file(ctx.out_dir + "/" + stem_of(name) + ".jsonl", lines);
  if (csv) write_text_file(ctx.out_dir + "/" + stem_of(name) + ".csv", csv->text());
}

const QuadricShape& shape_by_name(const std::string& name) {
  if (name == "quartic") return QuadricShape::quartic();
  if (name == "pairs") return QuadricShape::pairs();
  throw CLI::ValidationError("--form must be quartic or pairs");
}

std::optional<CongruenceSpec> congruence_from(const std::string& text, const QuadricShape& shape) {
  if (text.empty()) return std::nullopt;
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--congruence wants M:r1,r2,...");
  u64 modulus = 0;
  try {
    modulus = std::stoull(text.substr(0, colon));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--congruence: bad modulus");
  }
  auto residues =
      parse_i64_list(text.substr(colon + 1), size_t(shape.n_vars), "--congruence residues");
  return make_congruence(modulus, residues);
}

// ---- subcommand handlers --------------------------------------------------

void run_invariants(Ctx& ctx, const std::string& form_text) {
  BinaryQuarticForm F = form_from_list(parse_i64_list(form_text, 5, "--form"));
  bint I = invariant_I(F), J = invariant_J(F), disc = discriminant(F);
  std::printf("I=%s J=%s disc=%s\n", dec(I).c_str(), dec(J).c_str(), dec(disc).c_str());
  json payload{{"form", form_json(F)}, {"I", dec(I)}, {"J", dec(J)}, {"disc", dec(disc)}};
  CsvWriter csv({"form", "I", "J", "disc"});
  csv.row({form_text, dec(I), dec(J), dec(disc)});
  emit(ctx, "invariants", {{"form", form_text}}, {payload}, &csv);
}

CoeffBox box_from_flags(double cube, double lambda4, double t, double C) {
  if (cube > 0) return cube_box(cube);
  if (lambda4 > 0 && t > 0) return sharp_box(lambda4, t, C);
  throw CLI::ValidationError("pass --cube H or both --lambda4 and --t");
}

void run_enumerate(Ctx& ctx, double cube, double lambda4, double t, double C, bool skip_zero) {
  CoeffBox box = box_from_flags(cube, lambda4, t, C);
  EnumOptions opt;
  opt.include_zero_ae = !skip_zero;
  opt.threads = ctx.threads;
  auto rep = count_I0_box(box, opt);
  std::printf("count=%lld nonzero_ae=%lld zero_ae=%lld max_fiber=%lld triples=%llu (%.2fs)\n",
              (long long)rep.total, (long long)rep.nonzero_ae, (long long)rep.zero_ae,
              (long long)rep.max_fiber, (unsigned long long)rep.triples, rep.seconds);
  json payload{{"cube", cube},          {"lambda4", lambda4},
               {"t", t},               {"C", C},
               {"count", rep.total},   {"nonzero_ae", rep.nonzero_ae},
               {"zero_ae", rep.zero_ae}, {"max_fiber", rep.max_fiber}};
  CsvWriter csv({"cube", "lambda4", "t", "C", "count", "nonzero_ae", "zero_ae", "max_fiber",
                 "seconds"});
  csv.row({std::to_string(cube), std::to_string(lambda4), std::to_string(t), std::to_string(C),
           std::to_string(rep.total), std::to_string(rep.nonzero_ae),
           std::to_string(rep.zero_ae), std::to_string(rep.max_fiber),
           std::to_string(rep.seconds)});
  emit(ctx, "enumerate",
       {{"cube", std::to_string(cube)},
        {"lambda4", std::to_string(lambda4)},
        {"t", std::to_string(t)},
        {"C", std::to_string(C)},
        {"skip_zero_ae", skip_zero ? "1" : "0"}},
       {payload}, &csv);
}

void run_bruteforce(Ctx& ctx, double cube, double lambda4, double t, double C) {
  CoeffBox box = box_from_flags(cube, lambda4, t, C);
  i64 count = brute_force_I0_count(box);
  std::printf("count=%lld\n", (long long)count);
  json payload{{"cube", cube}, {"lambda4", lambda4}, {"t", t}, {"C", C}, {"count", count}};
  CsvWriter csv({"cube", "lambda4", "t", "C", "count"});
  csv.row({std::to_string(cube), std::to_string(lambda4), std::to_string(t), std::to_string(C),
           std::to_string(count)});
  emit(ctx, "bruteforce", {{"cube", std::to_string(cube)}}, {payload}, &csv);
}

void run_tail(Ctx& ctx, const std::string& l4_text, const std::string& t_text, double C,
              double epsilon) {
  auto l4 = parse_double_list(l4_text, "--lambda4");
  auto ts = parse_double_list(t_text, "--t");
  auto rep = tail_experiment(l4, ts, C, epsilon, ctx.threads);
  std::vector<json> payloads;
  CsvWriter csv({"lambda", "t", "u", "C", "count", "count_over_lambda12", "max_fiber", "seconds"});
  for (const auto& cell : rep.cells) {
    double lambda = std::pow(cell.lambda4, 0.25);
    payloads.push_back(json{{"lambda4", cell.lambda4},
                            {"lambda", lambda},
                            {"t", cell.t},
                            {"u", 0.0},
                            {"C", C},
                            {"count", cell.count},
                            {"count_over_lambda12", cell.count_over_lambda12},
                            {"max_fiber", cell.max_fiber}});
    csv.row({std::to_string(lambda), std::to_string(cell.t), "0", std::to_string(C),
             std::to_string(cell.count), std::to_string(cell.count_over_lambda12),
             std::to_string(cell.max_fiber), std::to_string(cell.seconds)});
  }
  for (const auto& cusp : rep.cusp)
    payloads.push_back(json{{"lambda4", cusp.lambda4},
                            {"epsilon", cusp.epsilon},
                            {"cusp_integral", cusp.value},
                            {"over_lambda12", cusp.over_lambda12},
                            {"over_lambda12_2eps", cusp.over_lambda12_2eps}});
  double worst = 0;
  for (const auto& cell : rep.cells) worst = std::max(worst, cell.count_over_lambda12);
  std::printf("cells=%zu max(N/lambda^12)=%.6g cusp_integrals=%zu\n", rep.cells.size(), worst,
              rep.cusp.size());
  emit(ctx, "tail",
       {{"lambda4", l4_text}, {"t", t_text}, {"C", std::to_string(C)},
        {"epsilon", std::to_string(epsilon)}},
       payloads, &csv);
}

void run_expsum(Ctx& ctx, const std::string& shape_name, u64 q, const std::string& c_text,
                u64 sweep_qmax, int samples) {
  const QuadricShape& shape = shape_by_name(shape_name);
  if (sweep_qmax > 0) {
    auto sweep = bound_sweep(shape, sweep_qmax, samples, ctx.seed);
    std::vector<json> payloads;
    CsvWriter csv({"q", "max_abs", "max_ratio"});
    for (const auto& row : sweep.rows) {
      payloads.push_back(json{{"q", row.q}, {"max_abs", row.max_abs}, {"max_ratio", row.max_ratio}});
      csv.row({std::to_string(row.q), std::to_string(row.max_abs), std::to_string(row.max_ratio)});
    }
    std::printf("sweep q<=%llu worst_ratio=%.6g at q=%llu\n", (unsigned long long)sweep_qmax,
                sweep.worst_ratio, (unsigned long long)sweep.worst_q);
    emit(ctx, "expsum",
         {{"form", shape_name}, {"sweep_qmax", std::to_string(sweep_qmax)},
          {"samples", std::to_string(samples)}},
         payloads, &csv);
    return;
  }
  std::vector<i64> c(size_t(shape.n_vars), 0);
  if (!c_text.empty()) c = parse_i64_list(c_text, size_t(shape.n_vars), "--c");
  auto sum = complete_sum(shape, q, c);
  bool zero_c = true;
  for (i64 v : c) zero_c = zero_c && v % i64(q) == 0;
  std::optional<i64> exact;
  if (zero_c) exact = complete_sum_zero_exact(shape, q);
  double ratio = std::abs(sum.value) / std::pow(double(q), shape.bound_exponent);
  if (exact)
    std::printf("S_%llu(0)=%lld |S|=%.6g ratio=%.6g\n", (unsigned long long)q, (long long)*exact,
                std::abs(sum.value), ratio);
  else
    std::printf("S_%llu(c)=%.6g%+.6gi |S|=%.6g ratio=%.6g\n", (unsigned long long)q,
                sum.value.real(), sum.value.imag(), std::abs(sum.value), ratio);
  json payload{{"q", q},
               {"c", c},
               {"re", sum.value.real()},
               {"im", sum.value.imag()},
               {"abs", std::abs(sum.value)},
               {"ratio", ratio}};
  if (exact) payload["exact"] = *exact;
  CsvWriter csv({"q", "re", "im", "abs", "ratio"});
  csv.row({std::to_string(q), std::to_string(sum.value.real()), std::to_string(sum.value.imag()),
           std::to_string(std::abs(sum.value)), std::to_string(ratio)});
  emit(ctx, "expsum", {{"form", shape_name}, {"q", std::to_string(q)}, {"c", c_text}}, {payload},
       &csv);
}

void run_density(Ctx& ctx, const std::string& shape_name, u64 p, int k,
                 const std::string& cong_text) {
  const QuadricShape& shape = shape_by_name(shape_name);
  auto spec = congruence_from(cong_text, shape);
  auto ld = local_density(shape, p, spec);
  json payload{{"p", p}, {"value", dec(ld.value)}, {"k_used", ld.k_used}};
  CsvWriter csv({"p", "k", "value", "count_k"});
  std::string count_text;
  if (k > 0) {
    bint count = count_mod(shape, p, k, spec);
    payload["k"] = k;
    payload["count_k"] = dec(count);
    count_text = dec(count);
    std::printf("sigma_%llu=%s k_used=%d count(k=%d)=%s\n", (unsigned long long)p,
                dec(ld.value).c_str(), ld.k_used, k, count_text.c_str());
  } else {
    std::printf("sigma_%llu=%s k_used=%d\n", (unsigned long long)p, dec(ld.value).c_str(),
                ld.k_used);
  }
  csv.row({std::to_string(p), std::to_string(k), dec(ld.value), count_text});
  emit(ctx, "density",
       {{"form", shape_name}, {"p", std::to_string(p)}, {"k", std::to_string(k)},
        {"congruence", cong_text}},
       {payload}, &csv);
}

void run_sseries(Ctx& ctx, const std::string& shape_name, u64 P, const std::string& cong_text) {
  const QuadricShape& shape = shape_by_name(shape_name);
  auto series = singular_series(shape, P, congruence_from(cong_text, shape));
  std::vector<json> payloads;
  CsvWriter csv({"p", "value", "float"});
  for (const auto& ld : series.primes) {
    payloads.push_back(json{{"p", ld.p}, {"value", dec(ld.value)}, {"k_used", ld.k_used}});
    csv.row({std::to_string(ld.p), dec(ld.value),
             std::to_string(double(numerator(ld.value)) / double(denominator(ld.value)))});
  }
  payloads.push_back(json{{"P", P}, {"value", series.value}, {"tail_abs_sum", series.tail_abs_sum}});
  std::printf("series(P=%llu)=%.6f tail=%.3g primes=%zu\n", (unsigned long long)P, series.value,
              series.tail_abs_sum, series.primes.size());
  emit(ctx, "sseries", {{"form", shape_name}, {"P", std::to_string(P)}, {"congruence", cong_text}},
       payloads, &csv);
}

void run_thicken(Ctx& ctx, const std::string& shape_name, u64 M, int k,
                 const std::string& f0_text) {
  const QuadricShape& shape = shape_by_name(shape_name);
  std::vector<i64> f0(size_t(shape.n_vars), 0);
  for (size_t i = 0; i < f0.size(); ++i) f0[i] = i64(i) + 1;
  if (!f0_text.empty()) f0 = parse_i64_list(f0_text, size_t(shape.n_vars), "--F0");
  auto tc = thickening_identity_check(shape, M, f0, k);
  std::printf("M=%llu k=%d equal=%s depth_reduction=%s crt=%s lhs=%s rhs=%s\n",
              (unsigned long long)M, k, tc.equal ? "yes" : "no",
              tc.depth_reduction_exact ? "yes" : "no", tc.crt_consistent ? "yes" : "no",
              dec(tc.lhs_scaled).c_str(), dec(tc.rhs_scaled).c_str());
  json payload{{"M", M},
               {"k", k},
               {"F0", f0},
               {"lhs_count", dec(tc.lhs_count)},
               {"rhs_count", dec(tc.rhs_count)},
               {"lhs_scaled", dec(tc.lhs_scaled)},
               {"rhs_scaled", dec(tc.rhs_scaled)},
               {"equal", tc.equal},
               {"depth_reduction_exact", tc.depth_reduction_exact},
               {"crt_consistent", tc.crt_consistent}};
  CsvWriter csv({"M", "k", "lhs", "rhs", "equal"});
  csv.row({std::to_string(M), std::to_string(k), dec(tc.lhs_scaled), dec(tc.rhs_scaled),
           tc.equal ? "1" : "0"});
  emit(ctx, "thicken",
       {{"form", shape_name}, {"M", std::to_string(M)}, {"k", std::to_string(k)},
        {"F0", f0_text}},
       {payload}, &csv);
}

void run_sigmainf(Ctx& ctx, double H, u64 samples, const std::string& mode_name) {
  SigmaMode mode = SigmaMode::profile;
  if (mode_name == "coarea") mode = SigmaMode::coarea;
  else if (mode_name == "thickened") mode = SigmaMode::thickened;
  else if (mode_name != "profile") throw CLI::ValidationError("--mode: profile, coarea, thickened");
  auto est = singular_integral(cube_box(H), samples, ctx.seed, mode);
  std::printf("sigma_inf(H=%g)=%.6g +- %.3g (%llu samples)\n", H, est.value, est.std_error,
              (unsigned long long)est.samples);
  json payload{{"H", H},
               {"mode", mode_name},
               {"value", est.value},
               {"std_error", est.std_error},
               {"samples", est.samples}};
  CsvWriter csv({"H", "mode", "value", "std_error", "samples"});
  csv.row({std::to_string(H), mode_name, std::to_string(est.value), std::to_string(est.std_error),
           std::to_string(est.samples)});
  emit(ctx, "sigmainf",
       {{"H", std::to_string(H)}, {"samples", std::to_string(samples)}, {"mode", mode_name}},
       {payload}, &csv);
}

void run_predict(Ctx& ctx, double H, u32 P, u64 samples) {
  auto pred = predict_main_term(cube_box(H), P, samples, ctx.seed);
  std::printf("exact=%lld predicted=%.6g rel_error=%.4f\n", (long long)pred.exact, pred.predicted,
              pred.relative_error());
  json payload{{"H", H},
               {"P", P},
               {"samples", samples},
               {"sigma_inf", pred.sigma_inf.value},
               {"series", pred.series_value},
               {"predicted", pred.predicted},
               {"exact", pred.exact},
               {"relative_error", pred.relative_error()}};
  CsvWriter csv({"H", "P", "exact", "predicted", "relative_error"});
  csv.row({std::to_string(H), std::to_string(P), std::to_string(pred.exact),
           std::to_string(pred.predicted), std::to_string(pred.relative_error())});
  emit(ctx, "predict",
       {{"H", std::to_string(H)}, {"P", std::to_string(P)}, {"samples", std::to_string(samples)},
        {"seed", std::to_string(ctx.seed)}},
       {payload}, &csv);
}

void run_deltacheck(Ctx& ctx, double Q, i64 nmax) {
  DeltaKernel kernel;
  std::vector<json> payloads;
  CsvWriter csv({"n", "value"});
  double at_zero = 0, worst_off = 0;
  for (i64 n = -nmax; n <= nmax; ++n) {
    double value = delta_check(n, Q, kernel);
    if (n == 0) at_zero = value;
    else worst_off = std::max(worst_off, std::fabs(value));
    payloads.push_back(json{{"n", n}, {"Q", Q}, {"value", value}});
    csv.row({std::to_string(n), std::to_string(value)});
  }
  std::printf("delta(0,%g)=%.6f worst_off=%.3g over |n|<=%lld\n", Q, at_zero, worst_off,
              (long long)nmax);
  emit(ctx, "deltacheck", {{"Q", std::to_string(Q)}, {"nmax", std::to_string(nmax)}}, payloads,
       &csv);
}

void run_errdecay(Ctx& ctx, const std::string& h_text, const std::string& t_text, u32 P,
                  u64 samples) {
  auto hs = parse_double_list(h_text, "--H");
  auto ts = parse_double_list(t_text, "--t");
  auto table = error_decay_experiment(hs, ts, P, samples, ctx.seed);
  std::vector<json> payloads;
  CsvWriter csv({"H", "t", "lambda", "exact", "predicted", "abs_error"});
  for (const auto& row : table.rows) {
    payloads.push_back(json{{"H", row.H},
                            {"t", row.t},
                            {"lambda", row.lambda},
                            {"exact", row.exact},
                            {"predicted", row.predicted},
                            {"abs_error", row.abs_error}});
    csv.row({std::to_string(row.H), std::to_string(row.t), std::to_string(row.lambda),
             std::to_string(row.exact), std::to_string(row.predicted),
             std::to_string(row.abs_error)});
  }
  std::printf("rows=%zu fitted_lambda_exponent=%.4f\n", table.rows.size(),
              table.fitted_lambda_exponent);
  emit(ctx, "errdecay",
       {{"H", h_text}, {"t", t_text}, {"P", std::to_string(P)},
        {"samples", std::to_string(samples)}, {"seed", std::to_string(ctx.seed)}},
       payloads, &csv);
}

void run_solubility(Ctx& ctx, const std::string& form_text) {
  BinaryQuarticForm F = form_from_list(parse_i64_list(form_text, 5, "--form"));
  auto local = locally_soluble(F);
  std::vector<json> payloads;
  CsvWriter csv({"place", "soluble", "x", "y", "z", "note"});
  for (const auto& cert : local.certificates) {
    payloads.push_back(json{{"place", cert.place},
                            {"soluble", cert.soluble},
                            {"x", dec(cert.x)},
                            {"y", dec(cert.y)},
                            {"z", dec(cert.z)},
                            {"precision", cert.precision},
                            {"note", cert.note}});
    csv.row({std::to_string(cert.place), cert.soluble ? "1" : "0", dec(cert.x), dec(cert.y),
             dec(cert.z), cert.note});
  }
  if (local.soluble)
    std::printf("soluble everywhere (%zu places checked)\n", local.certificates.size());
  else
    std::printf("insoluble at place %lld\n", (long long)local.certificates.back().place);
  emit(ctx, "solubility", {{"form", form_text}}, payloads, &csv);
}

void run_splitlemma(Ctx& ctx, u64 p) {
  auto rep = splitting_lemma_check(p);
  std::printf("p=%llu scanned=%llu i_zero=%llu forbidden=%llu quadruple=%llu identity=%s\n",
              (unsigned long long)p, (unsigned long long)rep.forms_scanned,
              (unsigned long long)rep.i_zero, (unsigned long long)rep.forbidden,
              (unsigned long long)rep.quadruple_roots,
              rep.square_of_quadratic_identity ? "yes" : "no");
  json payload{{"p", p},
               {"forms_scanned", rep.forms_scanned},
               {"i_zero", rep.i_zero},
               {"forbidden", rep.forbidden},
               {"quadruple_roots", rep.quadruple_roots},
               {"square_of_quadratic_identity", rep.square_of_quadratic_identity},
               {"type_counts", rep.type_counts}};
  CsvWriter csv({"type", "count"});
  for (const auto& [type, count] : rep.type_counts) csv.row({type, std::to_string(count)});
  emit(ctx, "splitlemma", {{"p", std::to_string(p)}}, {payload}, &csv);
}

void run_reduce(Ctx& ctx, const std::string& form_text) {
  BinaryQuarticForm F = form_from_list(parse_i64_list(form_text, 5, "--form"));
  auto rec = reduce_quartic(F);
  std::printf("representative=%s,%s,%s,%s,%s norm=%s explored=%llu minimal=%llu\n",
              dec(rec.representative.a).c_str(), dec(rec.representative.b).c_str(),
              dec(rec.representative.c).c_str(), dec(rec.representative.d).c_str(),
              dec(rec.representative.e).c_str(),
              dec(coefficient_norm(rec.representative)).c_str(),
              (unsigned long long)rec.forms_explored, (unsigned long long)rec.minimal_forms);
  CsvWriter csv({"a", "b", "c", "d", "e", "I", "J"});
  csv.row({dec(rec.representative.a), dec(rec.representative.b), dec(rec.representative.c),
           dec(rec.representative.d), dec(rec.representative.e), dec(rec.I), dec(rec.J)});
  emit(ctx, "reduce", {{"form", form_text}}, {orbit_json(rec)}, &csv);
}

void run_selmer(Ctx& ctx, i64 m, i64 a, double X, const std::string& family_name) {
  FamilySpec family;
  family.m = m;
  family.a = a;
  if (family_name == "squares") family.squares = true;
  else if (!family_name.empty() && family_name != "congruence")
    throw CLI::ValidationError("--family: congruence or squares");
  auto rep = selmer_average_experiment(family, X);
  std::vector<json> payloads;
  for (const auto& orbit : rep.orbits) payloads.push_back(orbit_json(orbit));
  json summary{{"X", X},
               {"family", family.squares ? "squares" : "congruence"},
               {"m", m},
               {"a", a},
               {"forms_enumerated", rep.forms_enumerated},
               {"forms_considered", rep.forms_considered},
               {"trivial_forms", rep.trivial_forms},
               {"insoluble_orbits", rep.insoluble_orbits},
               {"orbit_total", rep.orbit_total},
               {"curve_count", rep.curve_count},
               {"curve_count_4x", rep.curve_count_4x},
               {"growth_ratio", rep.growth_ratio},
               {"empirical_average", rep.empirical_average},
               {"limiting_value", rep.limiting_value},
               {"note", rep.note}};
  payloads.push_back(summary);
  CsvWriter csv({"B", "orbit_count", "selmer_proxy"});
  for (const auto& bucket : rep.curves)
    csv.row({dec(bucket.J), std::to_string(bucket.orbit_count),
             std::to_string(1.0 + double(bucket.orbit_count))});
  std::printf(
      "orbits=%llu curves=%llu average=%.4f (limiting value 3, no agreement asserted) "
      "growth=%.4f (%.1fs)\n",
      (unsigned long long)rep.orbit_total, (unsigned long long)rep.curve_count,
      rep.empirical_average, rep.growth_ratio, rep.seconds);
  emit(ctx, "selmer",
       {{"m", std::to_string(m)}, {"a", std::to_string(a)}, {"X", std::to_string(X)},
        {"family", family.squares ? "squares" : "congruence"}},
       payloads, &csv);
}

PairBox pair_box_from(double cube, const std::string& bound_text) {
  PairBox box;
  if (!bound_text.empty()) {
    auto b = parse_double_list(bound_text, "--bound");
    if (b.size() != 8) throw CLI::ValidationError("--bound wants 8 comma-separated numbers");
    for (size_t i = 0; i < 8; ++i) box.bound[i] = b[i];
    return box;
  }
  if (cube > 0) {
    box.bound.fill(cube);
    return box;
  }
  throw CLI::ValidationError("pass --cube H or --bound b1,...,b8");
}

void run_pairs_enumerate(Ctx& ctx, double cube, const std::string& bound_text, bool brute) {
  PairBox box = pair_box_from(cube, bound_text);
  if (brute) {
    u64 count = brute_force_pairs_count(box);
    std::printf("count=%llu (eight loops)\n", (unsigned long long)count);
    json payload{{"cube", cube}, {"count", count}, {"oracle", true}};
    CsvWriter csv({"cube", "count"});
    csv.row({std::to_string(cube), std::to_string(count)});
    emit(ctx, "pairs enumerate", {{"cube", std::to_string(cube)}, {"oracle", "1"}}, {payload},
         &csv);
    return;
  }
  PairEnumOptions opts;
  std::vector<json> samples;
  opts.visitor = [&](const CubicPair& v) {
    if (samples.size() < 5) samples.push_back(pair_json(v));
  };
  auto rep = count_pairs_quadric(box, opts);
  std::printf("count=%llu zero_stratum=%llu divisor_stratum=%llu max_fiber=%llu (%.2fs)\n",
              (unsigned long long)rep.total, (unsigned long long)rep.zero_stratum,
              (unsigned long long)rep.divisor_stratum, (unsigned long long)rep.max_fiber,
              rep.seconds);
  json payload{{"cube", cube},
               {"count", rep.total},
               {"zero_stratum", rep.zero_stratum},
               {"divisor_stratum", rep.divisor_stratum},
               {"max_fiber", rep.max_fiber},
               {"six_tuples", rep.six_tuples},
               {"sample_pairs", samples}};
  CsvWriter csv({"cube", "count", "zero_stratum", "divisor_stratum", "max_fiber", "seconds"});
  csv.row({std::to_string(cube), std::to_string(rep.total), std::to_string(rep.zero_stratum),
           std::to_string(rep.divisor_stratum), std::to_string(rep.max_fiber),
           std::to_string(rep.seconds)});
  emit(ctx, "pairs enumerate", {{"cube", std::to_string(cube)}, {"bound", bound_text}}, {payload},
       &csv);
}

void run_pairs_tail(Ctx& ctx, const std::string& l_text, const std::string& t_text) {
  auto ls = parse_double_list(l_text, "--lambda");
  auto ts = parse_double_list(t_text, "--t");
  auto rows = tail_count_pairs(ls, ts);
  std::vector<json> payloads;
  CsvWriter csv({"lambda", "t", "count", "normalized"});
  double worst = 0;
  for (const auto& row : rows) {
    worst = std::max(worst, row.normalized);
    payloads.push_back(json{{"lambda", row.lambda},
                            {"t", row.t},
                            {"count", row.count},
                            {"normalized", row.normalized}});
    csv.row({std::to_string(row.lambda), std::to_string(row.t), std::to_string(row.count),
             std::to_string(row.normalized)});
  }
  std::printf("rows=%zu max(count/lambda^6)=%.6g\n", rows.size(), worst);
  emit(ctx, "pairs tail", {{"lambda", l_text}, {"t", t_text}}, payloads, &csv);
}

void run_verify_cmd(Ctx& ctx, const std::string& level_name) {
  VerifyLevel level;
  if (level_name == "quick") level = VerifyLevel::quick;
  else if (level_name == "full") level = VerifyLevel::full;
  else throw CLI::ValidationError("--level: quick or full");
  auto results = run_verify(level);
  std::vector<json> payloads;
  CsvWriter csv({"id", "label", "gating", "pass", "seconds"});
  for (const auto& res : results) {
    std::printf("%s\n", criterion_line(res).c_str());
    std::fflush(stdout);
    json clauses = json::array();
    for (const auto& cl : res.clauses)
      clauses.push_back(json{{"label", cl.label}, {"pass", cl.pass}, {"detail", cl.detail}});
    payloads.push_back(json{{"id", res.id},
                            {"label", res.label},
                            {"gating", res.gating},
                            {"pass", res.pass},
                            {"clauses", clauses}});
    csv.row({std::to_string(res.id), res.label, res.gating ? "1" : "0", res.pass ? "1" : "0",
             std::to_string(res.seconds)});
  }
  ctx.exit_code = verify_exit_code(results);
  emit(ctx, "verify", {{"level", level_name}}, payloads, &csv);
}

// Config file: a JSON object of long-option name to value, optionally
// nested one level under a subcommand name.  Flags given on the command
// line win; config values are appended as extra arguments otherwise.
void apply_config(std::vector<std::string>& args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in.good()) throw CLI::ValidationError("--config: cannot read " + path);
  json config = json::parse(in, nullptr, false);
  if (config.is_discarded() || !config.is_object())
    throw CLI::ValidationError("--config: not a JSON object");

  auto has_flag = [&](const std::string& key) {
    for (const auto& arg : args)
      if (arg == "--" + key || arg.rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  auto append = [&](const std::string& key, const json& value) {
    if (has_flag(key)) return;
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
      return;
    }
    args.push_back("--" + key + "=" + text);
  };
  auto has_token = [&](const std::string& word) {
    return std::find(args.begin(), args.end(), word) != args.end();
  };
  for (const auto& [key, value] : config.items()) {
    if (value.is_object()) {
      if (has_token(key))
        for (const auto& [inner_key, inner] : value.items()) append(inner_key, inner);
    } else {
      append(key, value);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  Ctx ctx;
  CLI::App app{"Counts and cross-checks for quadric invariants, box enumeration, exponential "
               "sums, local densities, delta-symbol calibration, solubility, reduction, and the "
               "orbit-average experiments."};
  app.name("bqcount");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--out", ctx.out_dir, "directory for JSONL and CSV artifacts");
  app.add_option("--threads", ctx.threads, "worker threads (0 = BQ_THREADS, then hardware)");
  app.add_option("--seed", ctx.seed, "RNG seed for sampled computations");
  app.add_option("--config", ctx.config_path, "JSON file of option defaults");

  // invariants
  static std::string inv_form;
  auto* inv = app.add_subcommand("invariants", "I, J, disc of one quartic form");
  inv->add_option("--form", inv_form, "a,b,c,d,e")->required();
  inv->callback([&] { run_invariants(ctx, inv_form); });

  // enumerate / bruteforce
  static double en_cube = 0, en_l4 = 0, en_t = 0, en_C = 1;
  static bool en_skip_zero = false;
  auto* en = app.add_subcommand("enumerate", "divisor-method count of I = 0 forms in a box");
  en->add_option("--cube", en_cube, "cube half-width H");
  en->add_option("--lambda4", en_l4, "lambda^4 of the sharp box");
  en->add_option("--t", en_t, "height parameter of the sharp box");
  en->add_option("--C", en_C, "box dilation");
  en->add_flag("--skip-zero-ae", en_skip_zero, "drop forms with a e = 0");
  en->callback([&] { run_enumerate(ctx, en_cube, en_l4, en_t, en_C, en_skip_zero); });

  static double bf_cube = 0, bf_l4 = 0, bf_t = 0, bf_C = 1;
  auto* bf = app.add_subcommand("bruteforce", "five-loop oracle count of I = 0 forms");
  bf->add_option("--cube", bf_cube, "cube half-width H");
  bf->add_option("--lambda4", bf_l4, "lambda^4 of the sharp box");
  bf->add_option("--t", bf_t, "height parameter of the sharp box");
  bf->add_option("--C", bf_C, "box dilation");
  bf->callback([&] { run_bruteforce(ctx, bf_cube, bf_l4, bf_t, bf_C); });

  // tail
  static std::string tl_l4 = "10,20,40", tl_t = "1,2,4,8";
  static double tl_C = 1, tl_eps = 0.2;
  auto* tl = app.add_subcommand("tail", "sharp-box counts over a (lambda^4, t) grid");
  tl->add_option("--lambda4", tl_l4, "comma list of lambda^4 values");
  tl->add_option("--t", tl_t, "comma list of t values");
  tl->add_option("--C", tl_C, "box dilation");
  tl->add_option("--epsilon", tl_eps, "cusp cutoff exponent");
  tl->callback([&] { run_tail(ctx, tl_l4, tl_t, tl_C, tl_eps); });

  // expsum
  static std::string ex_form = "quartic", ex_c;
  static u64 ex_q = 5, ex_sweep = 0;
  static int ex_samples = 5;
  auto* ex = app.add_subcommand("expsum", "complete exponential sum S_q(c)");
  ex->add_option("--q", ex_q, "modulus");
  ex->add_option("--c", ex_c, "comma list, 5 or 8 entries by form");
  ex->add_option("--form", ex_form, "quartic or pairs");
  ex->add_option("--sweep-qmax", ex_sweep, "sweep q = 1..qmax instead of one sum");
  ex->add_option("--samples", ex_samples, "random c vectors per q in the sweep");
  ex->callback([&] { run_expsum(ctx, ex_form, ex_q, ex_c, ex_sweep, ex_samples); });

  // density / sseries / thicken
  static std::string de_form = "quartic", de_cong;
  static u64 de_p = 5;
  static int de_k = 0;
  auto* de = app.add_subcommand("density", "p-adic local density");
  de->add_option("--p", de_p, "prime")->required();
  de->add_option("--k", de_k, "also report the exact count at level p^k");
  de->add_option("--congruence", de_cong, "M:r1,r2,... residue condition");
  de->add_option("--form", de_form, "quartic or pairs");
  de->callback([&] { run_density(ctx, de_form, de_p, de_k, de_cong); });

  static std::string ss_form = "quartic", ss_cong;
  static u64 ss_P = 100;
  auto* ss = app.add_subcommand("sseries", "singular series up to a prime cutoff");
  ss->add_option("--P", ss_P, "prime cutoff")->required();
  ss->add_option("--congruence", ss_cong, "M:r1,r2,... residue condition");
  ss->add_option("--form", ss_form, "quartic or pairs");
  ss->callback([&] { run_sseries(ctx, ss_form, ss_P, ss_cong); });

  static std::string th_form = "quartic", th_f0;
  static u64 th_M = 2;
  static int th_k = 2;
  auto* th = app.add_subcommand("thicken", "congruence thickening identity check");
  th->add_option("--M", th_M, "thickening modulus")->required();
  th->add_option("--k", th_k, "level exponent")->required();
  th->add_option("--F0", th_f0, "base residue vector");
  th->add_option("--form", th_form, "quartic or pairs");
  th->callback([&] { run_thicken(ctx, th_form, th_M, th_k, th_f0); });

  // sigmainf / predict / deltacheck / errdecay
  static double si_H = 20;
  static u64 si_samples = 200000;
  static std::string si_mode = "profile";
  auto* si = app.add_subcommand("sigmainf", "real density of the I = 0 slice");
  si->add_option("--H", si_H, "cube half-width")->required();
  si->add_option("--samples", si_samples, "Monte-Carlo samples");
  si->add_option("--mode", si_mode, "profile, coarea, or thickened");
  si->callback([&] { run_sigmainf(ctx, si_H, si_samples, si_mode); });

  static double pr_H = 20;
  static u32 pr_P = 100;
  static u64 pr_samples = 200000;
  auto* pr = app.add_subcommand("predict", "main-term prediction against the exact count");
  pr->add_option("--H", pr_H, "cube half-width")->required();
  pr->add_option("--P", pr_P, "singular series cutoff");
  pr->add_option("--samples", pr_samples, "Monte-Carlo samples");
  pr->callback([&] { run_predict(ctx, pr_H, pr_P, pr_samples); });

  static double dc_Q = 10;
  static i64 dc_nmax = 5;
  auto* dc = app.add_subcommand("deltacheck", "delta-symbol indicator calibration");
  dc->add_option("--Q", dc_Q, "scale")->required();
  dc->add_option("--nmax", dc_nmax, "check n in [-nmax, nmax]");
  dc->callback([&] { run_deltacheck(ctx, dc_Q, dc_nmax); });

  static std::string ed_H = "0,20,40,80", ed_t = "1,2,4";
  static u32 ed_P = 100;
  static u64 ed_samples = 200000;
  auto* ed = app.add_subcommand("errdecay", "prediction error across box sizes");
  ed->add_option("--H", ed_H, "comma list of H values");
  ed->add_option("--t", ed_t, "comma list of t values");
  ed->add_option("--P", ed_P, "singular series cutoff");
  ed->add_option("--samples", ed_samples, "Monte-Carlo samples");
  ed->callback([&] { run_errdecay(ctx, ed_H, ed_t, ed_P, ed_samples); });

  // solubility / splitlemma / reduce
  static std::string so_form;
  auto* so = app.add_subcommand("solubility", "solubility over R and every Q_p");
  so->add_option("--form", so_form, "a,b,c,d,e")->required();
  so->callback([&] { run_solubility(ctx, so_form); });

  static u64 sl_p = 5;
  auto* sl = app.add_subcommand("splitlemma", "census of I = 0 splitting types mod p");
  sl->add_option("--p", sl_p, "prime in {5, 7, 11}")->required();
  sl->callback([&] { run_splitlemma(ctx, sl_p); });

  static std::string rd_form;
  auto* rd = app.add_subcommand("reduce", "canonical orbit representative");
  rd->add_option("--form", rd_form, "a,b,c,d,e")->required();
  rd->callback([&] { run_reduce(ctx, rd_form); });

  // selmer
  static i64 sm_m = 1, sm_a = 0;
  static double sm_X = 0;
  static std::string sm_family = "congruence";
  auto* sm = app.add_subcommand("selmer", "orbit-average experiment over a curve family");
  sm->add_option("--m", sm_m, "label modulus");
  sm->add_option("--a", sm_a, "label residue");
  sm->add_option("--X", sm_X, "height cut on |J|")->required();
  sm->add_option("--family", sm_family, "congruence or squares");
  sm->callback([&] { run_selmer(ctx, sm_m, sm_a, sm_X, sm_family); });

  // pairs
  auto* pa = app.add_subcommand("pairs", "cubic-pair analogues");
  pa->require_subcommand(1);
  static double pe_cube = 0;
  static std::string pe_bound;
  static bool pe_brute = false;
  auto* pe = pa->add_subcommand("enumerate", "count I2 = 0 pairs in a box");
  pe->add_option("--cube", pe_cube, "cube half-width");
  pe->add_option("--bound", pe_bound, "8 comma-separated half-widths");
  pe->add_flag("--oracle", pe_brute, "use the eight-loop oracle");
  pe->callback([&] { run_pairs_enumerate(ctx, pe_cube, pe_bound, pe_brute); });

  static u64 pd_p = 5;
  static int pd_k = 0;
  static std::string pd_cong;
  auto* pd = pa->add_subcommand("density", "local density of the pair quadric");
  pd->add_option("--p", pd_p, "prime")->required();
  pd->add_option("--k", pd_k, "also report the exact count at level p^k");
  pd->add_option("--congruence", pd_cong, "M:r1,...,r8 residue condition");
  pd->callback([&] { run_density(ctx, "pairs", pd_p, pd_k, pd_cong); });

  static u64 px_q = 5, px_sweep = 0;
  static std::string px_c;
  static int px_samples = 5;
  auto* px = pa->add_subcommand("expsum", "complete sum of the pair quadric");
  px->add_option("--q", px_q, "modulus");
  px->add_option("--c", px_c, "8 comma-separated entries");
  px->add_option("--sweep-qmax", px_sweep, "sweep q = 1..qmax");
  px->add_option("--samples", px_samples, "random c vectors per q in the sweep");
  px->callback([&] { run_expsum(ctx, "pairs", px_q, px_c, px_sweep, px_samples); });

  static std::string pt_l = "4,6,8", pt_t = "1,1.5";
  auto* pt = pa->add_subcommand("tail", "pair counts over skewed boxes");
  pt->add_option("--lambda", pt_l, "comma list of lambda values");
  pt->add_option("--t", pt_t, "comma list of t values");
  pt->callback([&] { run_pairs_tail(ctx, pt_l, pt_t); });

  // verify
  static std::string vf_level = "quick";
  auto* vf = app.add_subcommand("verify", "run the acceptance criteria");
  vf->add_option("--level", vf_level, "quick or full");
  vf->callback([&] { run_verify_cmd(ctx, vf_level); });

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    apply_config(args);
    // CLI11 consumes the vector from the back.
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& err) {
    int rc = app.exit(err);
    return rc == 0 ? 0 : 1;
  } catch (const GuardError& err) {
    std::fprintf(stderr, "guard: %s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return ctx.exit_code;
}
