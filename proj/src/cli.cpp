#include "tandem/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "tandem/bijection.hpp"
#include "tandem/classify.hpp"
#include "tandem/enumerate.hpp"
#include "tandem/exponent.hpp"
#include "tandem/fit.hpp"
#include "tandem/guess.hpp"
#include "tandem/model.hpp"

namespace tandem::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string fmt17(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json json_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Point parse_point(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw ValidationError("malformed target '" + text + "': expected i,j");
  try {
    std::size_t p1 = 0, p2 = 0;
    auto x = std::stoll(text.substr(0, comma), &p1);
    auto y = std::stoll(text.substr(comma + 1), &p2);
    if (p1 != comma || p2 != text.size() - comma - 1) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::logic_error&) {
    throw ValidationError("malformed target '" + text + "': expected i,j");
  }
}

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0 || sgn(q.get_den()) == 0) {
    throw ValidationError("malformed rational '" + text + "': expected num/den");
  }
  q.canonicalize();
  return q;
}

std::string rational_str(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

json model_json(const TandemModel& m) {
  const auto b = tandem_to_ballot(m);
  return json{{"A", m.A()}, {"B", m.B()}, {"C", m.C()}, {"a", b.a()}, {"b", b.b()}, {"c", b.c()}};
}

// Owns the stream primary output goes to.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot write output path '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

std::string svg_chart(const RichardsonLevel& series, std::optional<double> reference, const std::string& title) {
  const double W = 640, H = 400, pad = 50;
  double xmin = static_cast<double>(series.m.front()), xmax = static_cast<double>(series.m.back());
  double ymin = *std::min_element(series.value.begin(), series.value.end());
  double ymax = *std::max_element(series.value.begin(), series.value.end());
  if (reference) {
    ymin = std::min(ymin, *reference);
    ymax = std::max(ymax, *reference);
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax - ymin < 1e-9) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  auto sx = [&](double x) { return pad + (x - xmin) / (xmax - xmin) * (W - 2 * pad); };
  auto sy = [&](double y) { return H - pad - (y - ymin) / (ymax - ymin) * (H - 2 * pad); };
  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<text x=\"" << pad << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\"" << H - pad
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << pad << "\" y=\"" << H - pad + 20 << "\" font-size=\"11\">m=" << xmin << "</text>\n";
  os << "<text x=\"" << W - pad - 40 << "\" y=\"" << H - pad + 20 << "\" font-size=\"11\">m=" << xmax << "</text>\n";
  os << "<text x=\"2\" y=\"" << sy(ymax) << "\" font-size=\"11\">" << ymax << "</text>\n";
  os << "<text x=\"2\" y=\"" << sy(ymin) << "\" font-size=\"11\">" << ymin << "</text>\n";
  if (reference) {
    os << "<line x1=\"" << pad << "\" y1=\"" << sy(*reference) << "\" x2=\"" << W - pad << "\" y2=\""
       << sy(*reference) << "\" stroke=\"red\" stroke-dasharray=\"4 3\"/>\n";
  }
  os << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
  for (std::size_t i = 0; i < series.m.size(); ++i) {
    os << sx(static_cast<double>(series.m[i])) << "," << sy(series.value[i]) << " ";
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

struct Common {
  std::string output;
  unsigned threads = 1;
  std::uint64_t cell_limit = EnumerateOptions{}.cell_limit;
};

void add_output(CLI::App* app, Common& c) {
  app->add_option("-o,--output", c.output, "Write the primary output to this file instead of stdout");
}

void add_budget(CLI::App* app, Common& c) {
  app->add_option("--threads", c.threads, "Worker threads per enumeration level")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--cell-limit", c.cell_limit, "Abort when an enumeration needs more cells than this")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

int cmd_enumerate(const std::string& model_text, const std::string& what, std::int64_t n_max,
                  const std::string& mode_text, const std::string& target_text, const std::string& format,
                  const Common& c, std::ostream& out) {
  const auto model = parse_model(model_text);
  const auto steps = tandem_step_set(model);
  const auto mode = mode_text == "exact" ? CountMode::exact : CountMode::logfloat;
  EnumerateOptions opts{c.cell_limit, c.threads};
  Point target{0, 0};
  CountSequence seq = [&] {
    if (what == "excursions") return count_excursions(steps, n_max, mode, opts);
    if (what == "total") return count_walks_total(steps, n_max, mode, opts);
    if (target_text.empty()) throw ValidationError("--what endpoint requires --target i,j");
    target = parse_point(target_text);
    return count_endpoint(steps, n_max, target, mode, opts);
  }();
  Sink sink(c.output, out);
  if (format == "json") {
    json j{{"schema_version", kSchemaVersion},
           {"command", "enumerate"},
           {"model", model_json(model)},
           {"what", what},
           {"mode", mode_text},
           {"n_max", n_max},
           {"period", period(model)},
           {"cell_limit", c.cell_limit},
           {"threads", c.threads}};
    if (what == "endpoint") j["target"] = {target.x, target.y};
    json terms = json::array();
    for (std::size_t n = 0; n < seq.size(); ++n) {
      if (mode == CountMode::exact) {
        terms.push_back({{"n", n}, {"count", seq.exact()[n].get_str()}});
      } else {
        terms.push_back({{"n", n}, {"log_count", json_number(seq.logs()[n])}});
      }
    }
    j["terms"] = std::move(terms);
    *sink << j.dump(2) << "\n";
    return kOk;
  }
  *sink << (mode == CountMode::exact ? "n,count\n" : "n,log_count\n");
  for (std::size_t n = 0; n < seq.size(); ++n) {
    *sink << n << "," << (mode == CountMode::exact ? seq.exact()[n].get_str() : fmt17(seq.logs()[n])) << "\n";
  }
  return kOk;
}

json report_json(const ExponentReport& r) {
  return json{{"schema_version", kSchemaVersion},
              {"model", to_string(r.model)},
              {"ballot", to_string(tandem_to_ballot(r.model))},
              {"period", period(r.model)},
              {"X", r.critical.X},
              {"Y", r.critical.Y},
              {"mu", r.mu},
              {"gamma_sq", rational_str(r.gamma_sq)},
              {"gamma", r.gamma},
              {"alpha", r.alpha},
              {"alpha_closed_form", r.alpha_closed_form},
              {"rationality", r.rationality.rational ? "rational" : "irrational"},
              {"dfiniteness", to_string(r.dfiniteness)}};
}

int cmd_exponent(const std::string& model_text, bool as_json, const Common& c, std::ostream& out) {
  const auto r = exponent_report(parse_model(model_text));
  Sink sink(c.output, out);
  if (as_json) {
    *sink << report_json(r).dump(2) << "\n";
    return kOk;
  }
  const auto j = report_json(r);
  for (const auto& [k, v] : j.items()) {
    if (k == "schema_version") continue;
    *sink << k << ": " << (v.is_string() ? v.get<std::string>() : v.is_number_float() ? fmt17(v.get<double>()) : v.dump())
          << "\n";
  }
  return kOk;
}

int cmd_table1(const Common& c, std::ostream& out) {
  Sink sink(c.output, out);
  *sink << "a,b,c,A,B,C,gamma_sq,alpha,alpha_closed_form,verdict\n";
  for (const auto& b : reference_ballot_models()) {
    const auto t = ballot_to_tandem(b);
    const auto r = exponent_report(t);
    *sink << b.a() << "," << b.b() << "," << b.c() << "," << t.A() << "," << t.B() << "," << t.C() << ","
          << rational_str(r.gamma_sq) << "," << fmt17(r.alpha) << "," << r.alpha_closed_form << ","
          << to_string(r.dfiniteness) << "\n";
  }
  return kOk;
}

std::string alpha_text(const mpq_class& gamma_sq) {
  const auto rat = classify_rationality(gamma_sq);
  if (rat.rational) return std::to_string(rat.alpha);
  return fmt17(alpha_from_gamma(-std::sqrt(gamma_sq.get_d())));
}

int cmd_classify(const std::string& gamma_text, std::int64_t bound, const Common& c, std::ostream& out) {
  const auto r = parse_rational(gamma_text);
  const auto alpha = alpha_text(r);
  const auto triples = search_triples(r, bound);
  Sink sink(c.output, out);
  *sink << "A,B,C,alpha\n";
  for (const auto& t : triples) *sink << t.A() << "," << t.B() << "," << t.C() << "," << alpha << "\n";
  return kOk;
}

int cmd_table2(std::int64_t bound, const Common& c, std::ostream& out) {
  Sink sink(c.output, out);
  *sink << "gamma_sq,arccos_minus_gamma,alpha,A,B,C\n";
  for (auto kind : {FamilyKind::quarter, FamilyKind::half, FamilyKind::three_quarter}) {
    const auto spec = FamilySpec::of(kind);
    const char* angle = kind == FamilyKind::quarter ? "pi/3" : kind == FamilyKind::half ? "pi/4" : "pi/6";
    for (const auto& t : search_triples(spec.target, bound)) {
      *sink << rational_str(spec.target) << "," << angle << "," << spec.alpha << "," << t.A() << "," << t.B() << ","
            << t.C() << "\n";
    }
  }
  return kOk;
}

int cmd_fit(const std::string& model_text, std::int64_t m_max, int levels, const std::string& mode_text,
            const std::string& plot, const std::string& convergence, const Common& c, std::ostream& out) {
  const auto model = parse_model(model_text);
  const auto p = period(model);
  if (m_max <= 0) m_max = (p <= 3 ? 1200 : 1000) / p;
  const auto mode = mode_text == "exact" ? CountMode::exact : CountMode::logfloat;
  const auto seq = count_excursions(tandem_step_set(model), p * m_max, mode, {c.cell_limit, c.threads});
  FitOptions fo;
  fo.richardson_levels = levels;
  auto fit = estimate_alpha(seq, p, fo);
  const auto report = exponent_report(model);
  fit.reference_alpha = report.alpha;
  const auto& used = fit.richardson[fit.level_used];

  if (!convergence.empty()) {
    std::ofstream f(convergence);
    if (!f) throw ValidationError("cannot write convergence path '" + convergence + "'");
    f << "m,alpha_hat\n";
    for (std::size_t i = 0; i < used.m.size(); ++i) f << used.m[i] << "," << fmt17(used.value[i]) << "\n";
  }
  if (!plot.empty()) {
    std::ofstream f(plot);
    if (!f) throw ValidationError("cannot write plot path '" + plot + "'");
    f << svg_chart(used, fit.reference_alpha,
                   "alpha estimates for (" + model_text + "), Richardson level " + std::to_string(fit.level_used));
  }
  json j{{"schema_version", kSchemaVersion},
         {"command", "fit"},
         {"model", model_json(model)},
         {"period", p},
         {"mode", mode_text},
         {"n_max", p * m_max},
         {"m_first", fit.m_first},
         {"m_last", fit.m_last},
         {"richardson_levels", levels},
         {"level_used", fit.level_used},
         {"stability_threshold", fo.stability_threshold},
         {"alpha_final", fit.alpha_final},
         {"mu_final", fit.mu_final},
         {"alpha_reference", report.alpha},
         {"mu_reference", report.mu},
         {"deviation", *fit.deviation()}};
  Sink sink(c.output, out);
  *sink << j.dump(2) << "\n";
  return kOk;
}

int cmd_guess(const std::string& series, int max_order, int max_degree, std::size_t held_out, const Common& c,
              std::ostream& out) {
  std::ifstream in(series);
  if (!in) throw ValidationError("cannot read series file '" + series + "'");
  const auto terms = read_series(in);
  const auto res = guess_recurrence(terms, max_order, max_degree, {held_out});
  json grid = json::array();
  for (auto [r, d] : res.searched) grid.push_back({r, d});
  json j{{"schema_version", kSchemaVersion},
         {"command", "guess"},
         {"terms", terms.size()},
         {"max_order", max_order},
         {"max_degree", max_degree},
         {"held_out", held_out},
         {"found", res.recurrence.has_value()}};
  if (res.recurrence) {
    const auto& rec = *res.recurrence;
    json coeffs = json::array();
    for (const auto& poly : rec.coefficients()) {
      json row = json::array();
      for (const auto& v : poly) row.push_back(v.get_str());
      coeffs.push_back(std::move(row));
    }
    j["order"] = rec.order();
    j["degree"] = rec.degree();
    j["coefficients"] = std::move(coeffs);
    j["recurrence"] = rec.to_string();
  } else {
    j["order"] = nullptr;
    j["degree"] = nullptr;
    j["coefficients"] = nullptr;
  }
  j["searched_grid"] = std::move(grid);
  Sink sink(c.output, out);
  *sink << j.dump(2) << "\n";
  return kOk;
}

int cmd_bijection(const std::string& ballot_text, std::int64_t rounds, const std::string& walk, std::size_t cap,
                  const Common& c, std::ostream& out) {
  const auto ballot = parse_ballot(ballot_text);
  const auto model = ballot_to_tandem(ballot);
  Sink sink(c.output, out);
  if (!walk.empty()) {
    const bool is3d = walk.find_first_of("XYZ") != std::string::npos;
    if (is3d) *sink << map_walk_3to2(Walk3(ballot, walk)).steps() << "\n";
    else *sink << map_walk_2to3(Walk2(model, walk)).steps() << "\n";
    return kOk;
  }
  const auto p = period(model);
  const auto d3 = count_ballot_3d(ballot, rounds, {c.cell_limit, c.threads});
  const auto d2 = count_excursions(tandem_step_set(model), p * rounds, CountMode::exact, {c.cell_limit, c.threads});
  *sink << "rounds,length,ballot_3d,excursions_2d,brute_force,injective,image_equals_excursions\n";
  bool ok = true;
  for (std::int64_t n = 1; n <= rounds; ++n) {
    const auto& a = d3.exact()[n];
    const auto& b = d2.exact()[p * n];
    ok = ok && a == b;
    *sink << n << "," << p * n << "," << a.get_str() << "," << b.get_str() << ",";
    // The DP count tells in advance whether the brute force would hit its cap.
    auto walks = a <= cap ? brute_force_ballot_walks(ballot, n, cap) : BruteForceResult{{}, true};
    if (walks.capped) {
      *sink << "capped,,\n";
      continue;
    }
    std::vector<std::string> image;
    image.reserve(walks.walks.size());
    for (const auto& w : walks.walks) image.push_back(map_walk_3to2(Walk3(ballot, w)).steps());
    std::sort(image.begin(), image.end());
    const bool injective = std::adjacent_find(image.begin(), image.end()) == image.end();
    auto exc = brute_force_excursions(model, p * n, cap);
    const bool equal = !exc.capped && exc.walks == image;
    ok = ok && injective && (exc.capped || equal);
    *sink << walks.walks.size() << "," << (injective ? "yes" : "no") << ","
          << (exc.capped ? "capped" : equal ? "yes" : "no") << "\n";
  }
  return ok ? kOk : kValidation;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"enumerate", "exponent", "table1",  "table2",
                                                 "classify",  "fit",      "guess",   "bijection-check"};
  return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact enumeration and critical exponents of large tandem walks and 3-ballot walks", "tandem"};
  app.require_subcommand(1);
  Common common;

  std::string model = "1,1,1", what = "excursions", mode = "exact", target, format = "csv";
  std::int64_t n_max = 12;
  auto* en = app.add_subcommand("enumerate", "Count excursions, all walks, or walks to a fixed endpoint");
  en->add_option("--model", model, "Model as A,B,C or ballot:a,b,c")->capture_default_str();
  en->add_option("--what", what, "Which counts")->check(CLI::IsMember({"excursions", "total", "endpoint"}))
      ->capture_default_str();
  en->add_option("--n-max", n_max, "Largest walk length")->check(CLI::NonNegativeNumber)->capture_default_str();
  en->add_option("--mode", mode, "Exact big integers, or natural logs of the counts")->check(CLI::IsMember({"exact", "logfloat"}))
      ->capture_default_str();
  en->add_option("--target", target, "Endpoint i,j for --what endpoint");
  en->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  add_output(en, common);
  add_budget(en, common);

  bool as_json = false;
  auto* ex = app.add_subcommand("exponent", "Critical point, growth, gamma, alpha and D-finiteness verdict");
  ex->add_option("--model", model, "Model as A,B,C or ballot:a,b,c")->required();
  ex->add_flag("--json", as_json, "Emit JSON");
  add_output(ex, common);

  auto* t1 = app.add_subcommand("table1", "Exponents of the fifteen reference ballot models as CSV");
  add_output(t1, common);

  std::int64_t bound = 50;
  auto* t2 = app.add_subcommand("table2", "Models with rational exponent for gamma^2 in {1/4, 1/2, 3/4}");
  t2->add_option("--bound", bound, "Largest parameter searched")->check(CLI::PositiveNumber)->capture_default_str();
  add_output(t2, common);

  std::string gamma_sq;
  auto* cl = app.add_subcommand("classify", "All coprime (A,B,C) <= bound with a given gamma^2");
  cl->add_option("--gamma-sq", gamma_sq, "Target gamma^2 as num/den")->required();
  cl->add_option("--bound", bound, "Largest parameter searched")->check(CLI::PositiveNumber)->capture_default_str();
  add_output(cl, common);

  std::int64_t m_max = 0;
  int levels = 3;
  std::string fit_mode = "logfloat", plot, convergence;
  auto* fi = app.add_subcommand("fit", "Estimate alpha and mu from enumerated excursions");
  fi->add_option("--model", model, "Model as A,B,C or ballot:a,b,c")->required();
  fi->add_option("--m-max", m_max, "Largest m in e_{pm} (default: n <= 1200 for p <= 3, n <= 1000 otherwise)")
      ->check(CLI::PositiveNumber);
  fi->add_option("--richardson", levels, "Richardson levels")->check(CLI::Range(0, 3))->capture_default_str();
  fi->add_option("--mode", fit_mode, "Enumeration mode")->check(CLI::IsMember({"exact", "logfloat"}))
      ->capture_default_str();
  fi->add_option("--plot", plot, "Write an SVG chart of the estimates");
  fi->add_option("--convergence", convergence, "Write m,alpha_hat CSV");
  add_output(fi, common);
  add_budget(fi, common);

  std::string series;
  int max_order = 10, max_degree = 10;
  std::size_t held_out = GuessOptions{}.held_out;
  auto* gu = app.add_subcommand("guess", "Guess a polynomial-coefficient recurrence for a series");
  gu->add_option("--series", series, "File with one integer or num/den per line")->required();
  gu->add_option("--max-order", max_order, "Largest order")->check(CLI::NonNegativeNumber)->capture_default_str();
  gu->add_option("--max-degree", max_degree, "Largest coefficient degree")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gu->add_option("--held-out", held_out, "Trailing terms used only for verification")->capture_default_str();
  add_output(gu, common);

  std::string ballot = "1,1,1", walk;
  std::int64_t rounds = 1;
  std::size_t cap = kBruteForceCap;
  auto* bi = app.add_subcommand("bijection-check", "Check ballot walks against tandem excursions");
  bi->add_option("--ballot", ballot, "Ballot model a,b,c")->capture_default_str();
  bi->add_option("--rounds", rounds, "Check rounds 1..n")->check(CLI::PositiveNumber)->capture_default_str();
  bi->add_option("--walk", walk, "Map one walk (letters XYZ or RDU) to the other side");
  bi->add_option("--cap", cap, "Brute-force walk cap")->check(CLI::PositiveNumber)->capture_default_str();
  add_output(bi, common);
  add_budget(bi, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err) == 0 ? kOk : kValidation;
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    if (*en) return cmd_enumerate(model, what, n_max, mode, target, format, common, out);
    if (*ex) return cmd_exponent(model, as_json, common, out);
    if (*t1) return cmd_table1(common, out);
    if (*t2) return cmd_table2(bound, common, out);
    if (*cl) return cmd_classify(gamma_sq, bound, common, out);
    if (*fi) return cmd_fit(model, m_max, levels, fit_mode, plot, convergence, common, out);
    if (*gu) return cmd_guess(series, max_order, max_degree, held_out, common, out);
    if (*bi) return cmd_bijection(ballot, rounds, walk, cap, common, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kValidation;
}

}  // namespace tandem::cli
