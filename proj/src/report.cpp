#include "charpoly/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "charpoly/error.hpp"
#include "charpoly/forms.hpp"
#include "charpoly/graded.hpp"

namespace charpoly {

using Json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kBudgetKeys = {"events", "normalize_steps", "dissolve_degree", "search_log2",
                                              "strong_steps"};

Json strings(const std::vector<Poly>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

Json vertex_list(const FSubset& d) {
  Json out = Json::array();
  for (const auto& v : d.vertices()) out.push_back(point_to_string(v));
  return out;
}

Json facet_list(const FSubset& d) {
  Json out = Json::array();
  if (d.empty()) return out;
  for (const auto& l : d.facets()) out.push_back(point_to_string(l.coeffs));
  return out;
}

Json polyhedron_json(const FSubset& d) {
  return Json{{"empty", d.empty()}, {"vertices", vertex_list(d)}, {"facets", facet_list(d)}};
}

Json generators_json(const ProblemFile& p, const std::vector<Poly>& gens) {
  Json out = Json::array();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Json g{{"name", i < p.gen_names.size() ? p.gen_names[i] : "g" + std::to_string(i + 1)},
           {"poly", gens[i].to_string()}};
    int n = order_mod_u(gens[i]);
    if (n == kInfiniteOrder) {
      g["order"] = nullptr;
      g["exponent"] = nullptr;
    } else {
      g["order"] = n;
      g["exponent"] = exponent_of(gens[i]);
    }
    out.push_back(std::move(g));
  }
  return out;
}

Json log_json(const std::vector<PrepEvent>& log) {
  Json out = Json::array();
  for (const auto& ev : log) {
    Json e{{"kind", ev.kind}};
    e["vertex"] = ev.vertex ? Json(point_to_string(*ev.vertex)) : Json(nullptr);
    e["detail"] = ev.detail;
    e["vertices"] = vertex_list(ev.polyhedron);
    out.push_back(std::move(e));
  }
  return out;
}

Json rationals_json(const std::vector<Rational>& qs) {
  Json out = Json::array();
  for (const auto& q : qs) out.push_back(rational_to_string(q));
  return out;
}

Json state_json(const ProblemFile& p, const PrepState& s) {
  Json r{{"status", s.status}, {"stop_reason", s.stop_reason}};
  r["generators"] = generators_json(p, s.gens);
  r["substitutions"] = s.substitution_strings();
  r["polyhedron"] = polyhedron_json(s.polyhedron);
  r["lambda"] = s.lambda ? Json(rational_to_string(*s.lambda)) : Json(nullptr);
  r["lambda_trace"] = rationals_json(s.lambda_trace);
  Json cyc = Json::array();
  for (const auto& v : s.cycle) cyc.push_back(point_to_string(v));
  r["cycle"] = cyc;
  r["witness"] = s.witness ? Json(point_to_string(*s.witness)) : Json(nullptr);
  r["log"] = log_json(s.log);
  return r;
}

std::vector<Poly> graded_input(const ProblemFile& p, const RunFlags& flags) {
  if (flags.raw_forms) {
    for (const auto& g : p.gens)
      if (!g.u_free()) throw InvalidInput("--raw-forms needs generators free of u-variables");
    return p.gens;
  }
  std::vector<Poly> forms;
  for (const auto& g : p.gens) forms.push_back(in_zero(g).poly());
  return forms;
}

PrepareOptions prepare_options(const ProblemFile& p, const RunFlags& flags) {
  PrepareOptions o;
  o.budget = resolve_budget(p, flags);
  o.generalized = !flags.plain;
  return o;
}

Json dispatch(const std::string& cmd, const ProblemFile& p, const RunFlags& flags, RunReport& rep) {
  Json r;
  if (cmd == "polyhedron") {
    FSubset d = poly_of_system(p.gens);
    r = polyhedron_json(d);
    r["generators"] = generators_json(p, p.gens);
    rep.plot = d;
  } else if (cmd == "pair-polyhedron") {
    if (!p.pair_b) throw InvalidInput("pair-polyhedron needs a 'pair b = <rational>' statement");
    FSubset d = poly_of_pair(p.gens, *p.pair_b);
    r = polyhedron_json(d);
    r["b"] = rational_to_string(*p.pair_b);
    rep.plot = d;
  } else if (cmd == "normalize") {
    Budget b = resolve_budget(p, flags);
    PrepState s = vertex_normalize(p.gens, b);
    r = state_json(p, s);
    StrongNormalization sn = strong_normalize(s.gens, b.strong_steps);
    Json strong{{"status", sn.status}, {"steps", sn.steps}, {"generators", strings(sn.gens)},
                {"polyhedron", polyhedron_json(sn.polyhedron)},
                {"polyhedron_stationary", sn.polyhedron_stationary}};
    strong["repeated"] = sn.repeated ? Json(*sn.repeated) : Json(nullptr);
    r["strong"] = strong;
    rep.plot = s.polyhedron;
  } else if (cmd == "prepare") {
    PrepState s = prepare(p.gens, prepare_options(p, flags));
    r = state_json(p, s);
    if (s.status == "budget-exhausted") rep.exit = ExitCode::Budget;
    rep.plot = s.polyhedron;
  } else if (cmd == "measure") {
    FSubset raw = poly_of_system(p.gens);
    PrepState s = prepare(p.gens, prepare_options(p, flags));
    r["raw"] = polyhedron_json(raw);
    r["prepared"] = polyhedron_json(s.polyhedron);
    r["prepare_status"] = s.status;
    if (s.polyhedron.empty()) throw DomainError("prepared polyhedron is empty; the measure needs a nonempty inner polyhedron");
    r["lambda"] = rational_to_string(lambda_measure(s.polyhedron, raw));
    if (s.status == "budget-exhausted") rep.exit = ExitCode::Budget;
    rep.plot = s.polyhedron;
  } else if (cmd == "directrix") {
    auto forms = graded_input(p, flags);
    DirectrixResult d = directrix(forms);
    r = Json{{"forms", strings(forms)}, {"linear_forms", strings(d.linear_forms)}, {"r_min", d.r_min}};
  } else if (cmd == "ridge") {
    auto forms = graded_input(p, flags);
    RidgeResult rg = ridge(forms);
    r = Json{{"forms", strings(forms)},
             {"additive_gens", strings(rg.additive_gens)},
             {"d", rg.d},
             {"all_additive", rg.all_additive}};
  } else if (cmd == "check-condition") {
    auto forms = graded_input(p, flags);
    RidEqDirReport c = check_rid_eq_dir(forms);
    r = Json{{"forms", strings(forms)},
             {"outcome", to_string(c.outcome)},
             {"reduced_gens", strings(c.reduced_gens)},
             {"directrix", strings(c.directrix)}};
    r["witness"] = c.witness ? Json(c.witness->to_string()) : Json(nullptr);
    r["note"] = c.note;
  } else if (cmd == "check-std-basis") {
    LinearForm l(p.form ? *p.form : std::vector<Rational>(p.frame->e(), Rational(1)));
    StdBasisReport sb = check_standard_basis(p.gens, l);
    r = Json{{"ok", sb.ok}, {"form", point_to_string(l.coeffs)}, {"orders", sb.orders},
             {"condition1", to_string(sb.condition1)}};
    Json v = Json::array();
    for (const auto& x : sb.violations)
      v.push_back(Json{{"condition", x.condition}, {"generator", x.generator}, {"witness", x.witness}});
    r["violations"] = v;
  } else {
    throw InvalidInput("unknown command '" + cmd + "'");
  }
  return r;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> cmds = {"polyhedron", "pair-polyhedron", "normalize",
                                                "prepare",    "directrix",       "ridge",
                                                "check-condition", "check-std-basis", "measure"};
  return cmds;
}

std::string input_digest(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::map<std::string, long> parse_budget_list(std::string_view list) {
  std::map<std::string, long> out;
  std::string item;
  std::stringstream ss{std::string(list)};
  while (std::getline(ss, item, ',')) {
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("budget entry '" + item + "' is not k=v");
    std::string key = trim(item.substr(0, eq)), val = trim(item.substr(eq + 1));
    if (std::find(kBudgetKeys.begin(), kBudgetKeys.end(), key) == kBudgetKeys.end())
      throw InvalidInput("unknown budget key '" + key + "'");
    if (val.empty() || val.size() > 9 || val.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidInput("budget value for '" + key + "' must be a nonnegative integer");
    out[key] = std::stol(val);
  }
  return out;
}

Budget resolve_budget(const ProblemFile& p, const RunFlags& flags) {
  std::map<std::string, long> merged = flags.budget_defaults;
  for (const auto& [k, v] : p.budgets) merged[k] = v;
  for (const auto& [k, v] : flags.budget_overrides) merged[k] = v;
  Budget b;
  for (const auto& [k, v] : merged) {
    bool zero_ok = (k == "normalize_steps" || k == "dissolve_degree");
    if (v < 0 || (v == 0 && !zero_ok)) throw InvalidInput("budget '" + k + "' must be positive");
    int iv = static_cast<int>(std::min<long>(v, 1'000'000'000));
    if (k == "events") b.events = iv;
    else if (k == "normalize_steps") b.normalize_steps = iv;
    else if (k == "dissolve_degree") b.dissolve_degree = iv;
    else if (k == "search_log2") b.search_log2 = std::min(iv, 40);
    else if (k == "strong_steps") b.strong_steps = iv;
    else throw InvalidInput("unknown budget key '" + k + "'");
  }
  return b;
}

RunReport run(const std::string& command, std::string_view text, const RunFlags& flags) {
  auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  Json& j = rep.json;
  j["command"] = command;
  j["input_digest"] = input_digest(text);
  j["status"] = "ok";
  j["exit_code"] = 0;
  try {
    if (std::find(commands().begin(), commands().end(), command) == commands().end())
      throw InvalidInput("unknown command '" + command + "'");
    ProblemFile p = parse_problem(text);
    j["field"] = p.field().is_rational() ? "Q" : "F" + std::to_string(p.field().characteristic());
    j["frame"] = Json{{"u", p.frame->u_names}, {"y", p.frame->y_names}};
    Json result = dispatch(command, p, flags, rep);
    j["result"] = std::move(result);
    j["notes"] = Json::array({"staircase approximation of exp of the earlier generators in normalization tests"});
  } catch (const InvalidInput& e) {
    rep.exit = ExitCode::InvalidInput;
    j["error"] = std::string("invalid input: ") + e.what();
  } catch (const DomainError& e) {
    rep.exit = ExitCode::InvalidInput;
    j["error"] = std::string("domain error: ") + e.what();
  } catch (const BudgetExhausted& e) {
    rep.exit = ExitCode::Budget;
    j["error"] = std::string("budget exhausted: ") + e.what();
  } catch (const InternalError& e) {
    rep.exit = ExitCode::InvalidInput;
    j["error"] = std::string("internal error: ") + e.what();
  }
  if (rep.exit == ExitCode::InvalidInput) {
    j["status"] = "error";
    rep.plot.reset();
  } else if (rep.exit == ExitCode::Budget) {
    j["status"] = "budget-exhausted";
  }
  j["exit_code"] = static_cast<int>(rep.exit);
  j["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace {

void render_value(std::ostringstream& out, const Json& v, int indent);

void render_field(std::ostringstream& out, const std::string& key, const Json& v, int indent) {
  std::string pad(indent, ' ');
  if (v.is_object()) {
    out << pad << key << ":\n";
    render_value(out, v, indent + 2);
  } else if (v.is_array() && !v.empty() && v.front().is_object()) {
    out << pad << key << ":\n";
    for (const auto& x : v) {
      out << pad << "  -\n";
      render_value(out, x, indent + 4);
    }
  } else if (v.is_array()) {
    out << pad << key << ":";
    for (const auto& x : v) out << " " << (x.is_string() ? x.get<std::string>() : x.dump());
    out << "\n";
  } else {
    out << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

void render_value(std::ostringstream& out, const Json& v, int indent) {
  for (const auto& [k, x] : v.items()) render_field(out, k, x, indent);
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  for (const auto& [k, v] : report.items()) {
    if (k == "timing_ms" || k == "notes" || k == "input_digest") continue;
    render_field(out, k, v, 0);
  }
  return out.str();
}

std::string render_svg(const FSubset& delta, const std::string& title) {
  if (delta.dim() != 2) throw InvalidInput("SVG output needs e = 2");
  constexpr int kSize = 600, kMargin = 40, kPlot = kSize - 2 * kMargin;
  // Axis ranges: one unit past the largest vertex coordinate.
  auto ceil_q = [](const Rational& q) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return c.get_si();
  };
  long xmax = 1, ymax = 1;
  for (const auto& v : delta.vertices()) {
    xmax = std::max(xmax, ceil_q(v[0]) + 1);
    ymax = std::max(ymax, ceil_q(v[1]) + 1);
  }
  const Rational qx(xmax), qy(ymax);
  auto px = [&](const Rational& x) { return fmt(kMargin + Rational(x / qx).get_d() * kPlot); };
  auto py = [&](const Rational& y) { return fmt(kMargin + kPlot - Rational(y / qy).get_d() * kPlot); };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize << "\" height=\"" << kSize
    << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
  if (!title.empty())
    s << "<text x=\"" << kSize / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"14\">"
      << escape_xml(title) << "</text>\n";

  if (!delta.empty()) {
    std::vector<QPoint> vs = delta.vertices();
    std::sort(vs.begin(), vs.end(), [](const QPoint& a, const QPoint& b) { return a[0] < b[0]; });
    s << "<polygon fill=\"#cfe0f5\" stroke=\"none\" points=\"";
    s << px(vs.front()[0]) << "," << py(qy);
    for (const auto& v : vs) s << " " << px(v[0]) << "," << py(v[1]);
    s << " " << px(qx) << "," << py(vs.back()[1]) << " " << px(qx) << "," << py(qy) << "\"/>\n";

    // Facet lines a x + b y = 1 clipped to the plot box.
    for (const auto& l : delta.facets()) {
      const Rational& a = l.coeffs[0];
      const Rational& b = l.coeffs[1];
      std::vector<QPoint> ends;
      auto keep = [&](Rational x, Rational y) {
        if (x >= 0 && x <= qx && y >= 0 && y <= qy) ends.push_back({x, y});
      };
      if (b != 0) {
        keep(Rational(0), 1 / b);
        keep(qx, (1 - a * qx) / b);
      }
      if (a != 0) {
        keep(1 / a, Rational(0));
        keep((1 - b * qy) / a, qy);
      }
      if (ends.size() < 2) continue;
      auto [lo, hi] = std::minmax_element(ends.begin(), ends.end(), [](const QPoint& p, const QPoint& q) {
        return p[0] != q[0] ? p[0] < q[0] : p[1] > q[1];
      });
      s << "<line x1=\"" << px((*lo)[0]) << "\" y1=\"" << py((*lo)[1]) << "\" x2=\"" << px((*hi)[0]) << "\" y2=\""
        << py((*hi)[1]) << "\" stroke=\"#1f4e8c\" stroke-width=\"1\" stroke-dasharray=\"4,3\"/>\n";
    }
  }

  // Axes and integer ticks (thinned so that at most 20 are labelled).
  s << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin + kPlot << "\" x2=\"" << kMargin + kPlot << "\" y2=\""
    << kMargin + kPlot << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << kMargin + kPlot
    << "\" stroke=\"black\"/>\n";
  long xstep = (xmax + 19) / 20, ystep = (ymax + 19) / 20;
  for (long t = 0; t <= xmax; t += xstep) {
    std::string x = px(Rational(t));
    s << "<line x1=\"" << x << "\" y1=\"" << kMargin + kPlot << "\" x2=\"" << x << "\" y2=\"" << kMargin + kPlot + 5
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << x << "\" y=\"" << kMargin + kPlot + 18
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" << t << "</text>\n";
  }
  for (long t = 0; t <= ymax; t += ystep) {
    std::string y = py(Rational(t));
    s << "<line x1=\"" << kMargin - 5 << "\" y1=\"" << y << "\" x2=\"" << kMargin << "\" y2=\"" << y
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << kMargin - 8 << "\" y=\"" << y
      << "\" text-anchor=\"end\" dominant-baseline=\"middle\" font-family=\"monospace\" font-size=\"11\">" << t
      << "</text>\n";
  }

  if (delta.empty()) {
    s << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize / 2
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"16\">empty</text>\n";
  } else {
    for (const auto& v : delta.vertices()) {
      s << "<circle cx=\"" << px(v[0]) << "\" cy=\"" << py(v[1]) << "\" r=\"4\" fill=\"#c0392b\"/>\n";
      s << "<text x=\"" << px(v[0]) << "\" y=\"" << py(v[1])
        << "\" dx=\"6\" dy=\"-6\" font-family=\"monospace\" font-size=\"11\">(" << point_to_string(v)
        << ")</text>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace charpoly
