// Command-line front end: evaluate indices and Z*, one-sided derivatives,
// graph data, monotone inversion, and the full verification suite.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetastar/closed_form.hpp"
#include "zetastar/errors.hpp"
#include "zetastar/verify.hpp"
#include "zetastar/zstar.hpp"

namespace {

using nlohmann::ordered_json;
using namespace zetastar;

std::string num15(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

const char* method_name(EvalMethod m) {
  switch (m) {
    case EvalMethod::Finite: return "finite";
    case EvalMethod::TailL: return "tail-l";
    case EvalMethod::Periodic: return "periodic";
  }
  return "?";
}

struct Options {
  TruncationParams params;
  std::string format = "plain";
  int depth = 48;
};

void emit(const Options& opt, const ordered_json& obj) {
  if (opt.format == "json") {
    std::cout << obj.dump(2) << "\n";
    return;
  }
  const char sep = opt.format == "csv" ? ',' : '\n';
  if (opt.format == "csv") {
    bool first = true;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!first) std::cout << sep;
      std::cout << it.key();
      first = false;
    }
    std::cout << "\n";
  }
  bool first = true;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string v = it->is_string() ? it->get<std::string>() : it->dump();
    if (opt.format == "csv") {
      if (!first) std::cout << sep;
      std::cout << v;
    } else {
      std::printf("%-10s = %s\n", it.key().c_str(), v.c_str());
    }
    first = false;
  }
  if (opt.format == "csv") std::cout << "\n";
}

// "a/2^n", a binary string "0.0111..." (trailing ones implied by "..."),
// or a decimal literal (binary64 values are exact dyadics).
ZPoint parse_point(const std::string& text) {
  if (text.find('/') != std::string::npos) {
    const auto slash = text.find('/');
    const std::string den = text.substr(slash + 1);
    if (den.size() >= 1 && den[0] == '2' && (den.size() == 1 || den[1] == '^'))
      return ZPoint::from_dyadic(Dyadic::parse(text));
    return ZPoint::from_rational(std::stoll(text.substr(0, slash)), std::stoll(den));
  }
  const bool binary_digits =
      text.rfind("0.", 0) == 0 &&
      text.find_first_not_of("01.", 2) == std::string::npos;
  if (binary_digits || text.size() > 3) {
    std::string t = text;
    bool repeat_last = false;
    if (t.size() >= 3 && t.substr(t.size() - 3) == "...") {
      t = t.substr(0, t.size() - 3);
      repeat_last = true;
    }
    if (t.rfind("0.", 0) == 0 && t.find_first_not_of("01", 2) == std::string::npos) {
      std::vector<std::uint8_t> bits;
      for (std::size_t i = 2; i < t.size(); ++i) bits.push_back(t[i] == '1');
      if (bits.empty()) throw DomainError("empty binary point");
      DigitStream s =
          repeat_last && bits.back() == 1
              ? DigitStream::raw({bits.begin(), bits.end() - 1}, DigitTail::Ones)
              : DigitStream::raw(std::move(bits), DigitTail::Zeros);
      const DigitStream canon = canonicalize(s);
      return ZPoint::from_rational(canon.value_num(), canon.value_den());
    }
  }
  return ZPoint::from_double(std::stod(text));
}

int cmd_eval_index(const Options& opt, const std::string& text) {
  const Index idx = Index::parse(text);
  const Evaluation e = eval_index(idx, opt.params);
  ordered_json out;
  out["index"] = idx.to_string();
  if (e.divergent()) {
    out["value"] = "+inf (divergent index (2,{1}^inf))";
  } else {
    out["value"] = num15(e.value);
  }
  out["err_estimate"] = sci(e.err_estimate);
  out["method"] = method_name(method_for(idx));
  out["converged"] = e.converged ? "yes" : "no";
  emit(opt, out);
  return 0;
}

int cmd_eval_zstar(const Options& opt, const std::string& text) {
  const ZPoint z = parse_point(text);
  const Evaluation direct = zstar(z, opt.params);
  const Evaluation via = zstar_via_index(z, opt.params);
  ordered_json out;
  out["z"] = num15(z.approx());
  if (direct.divergent()) {
    out["value"] = "+inf (divergent index (2,{1}^inf))";
    emit(opt, out);
    return 0;
  }
  out["digit-series"] = num15(direct.value);
  out["index-dispatch"] = num15(via.value);
  out["agreement"] = sci(std::fabs(direct.value - via.value));
  out["err_estimate"] = sci(direct.err_estimate);
  emit(opt, out);
  return 0;
}

int cmd_derivative(const Options& opt, const std::string& side, const std::string& at) {
  const Dyadic z = Dyadic::parse(at);
  ordered_json out;
  out["z"] = z.to_string();
  const auto render = [&](const DerivativeReport& r, const char* key) {
    if (r.divergent()) {
      out[key] = "DIVERGES";
    } else {
      ordered_json rep;
      rep["value"] = num15(r.value);
      rep["truncation_depth"] = r.truncation_depth;
      rep["error_model"] = sci(r.error_model);
      out[key] = opt.format == "json" ? ordered_json(rep) : ordered_json(num15(r.value));
    }
  };
  if (side == "right" || side == "both") render(right_derivative(z, opt.params), "right");
  if (side == "left" || side == "both") render(left_derivative(z, opt.params), "left");
  emit(opt, out);
  return 0;
}

int cmd_invert(const Options& opt, double v) {
  const ZPoint z = invert_zstar(v, opt.params, opt.depth);
  ordered_json out;
  out["v"] = num15(v);
  out["z"] = z.exact() ? z.exact()->to_string() : num15(z.approx());
  out["z_decimal"] = num15(z.approx());
  out["digits"] = z.digits().to_string(static_cast<std::size_t>(opt.depth));
  out["residual"] = sci(std::fabs(zstar(z, opt.params).value - v));
  emit(opt, out);
  return 0;
}

int cmd_graph(const Options& opt, int n, const std::string& out_path) {
  const auto rows = graph_samples(n, opt.params);
  if (out_path.empty()) {
    write_graph_csv(std::cout, rows);
  } else {
    std::ofstream f(out_path);
    if (!f) throw DomainError("cannot open output file " + out_path);
    write_graph_csv(f, rows);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
  }
  return 0;
}

int cmd_verify(const Options& opt) {
  const VerifyReport report = run_verification(opt.params);
  if (opt.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const VerifyCheck& c : report.checks) {
      ordered_json r;
      r["criterion"] = c.criterion;
      r["identity"] = c.name;
      r["expected"] = c.expected;
      r["computed"] = c.computed;
      r["residual"] = c.residual;
      r["pass"] = c.pass;
      rows.push_back(std::move(r));
    }
    std::cout << rows.dump(2) << "\n";
  } else {
    std::cout << to_tsv(report);
  }
  int failed = 0;
  for (const VerifyCheck& c : report.checks)
    if (!c.pass) ++failed;
  std::cerr << (failed == 0 ? "verify: all checks passed"
                            : "verify: " + std::to_string(failed) + " check(s) FAILED")
            << " (" << report.checks.size() << " total)\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiple zeta-star values for indices of infinite length"};
  app.require_subcommand(1);

  Options opt;
  opt.params.tol = 1e-8;
  app.add_option("--tol", opt.params.tol, "target absolute error")->capture_default_str();
  app.add_option("--mcap", opt.params.m_cap, "summation variable cap")->capture_default_str();
  app.add_option("--depth", opt.depth, "digit depth for inversion")->capture_default_str();
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"plain", "json", "csv"}))
      ->capture_default_str();

  std::string index_text, point_text, side = "both", at_text, out_path;
  double invert_v = 0.0;
  int graph_n = 1024;

  auto* c_index = app.add_subcommand("eval-index", "evaluate a zeta-star index");
  c_index->add_option("index", index_text, "e.g. \"(2,1)\", \"3,(2)\", \"4!\"")->required();

  auto* c_zstar = app.add_subcommand("eval-zstar", "evaluate Z* at a point of (0,1]");
  c_zstar->add_option("z", point_text, "a/2^n, p/q, 0.0111..., or decimal")->required();

  auto* c_deriv = app.add_subcommand("derivative", "one-sided derivatives at a dyadic point");
  c_deriv->add_option("--side", side)->check(CLI::IsMember({"left", "right", "both"}));
  c_deriv->add_option("--at", at_text, "dyadic a/2^n")->required();

  auto* c_invert = app.add_subcommand("invert", "solve Z*(z) = v for z");
  c_invert->add_option("v", invert_v, "target value > 1")->required();

  auto* c_graph = app.add_subcommand("graph", "emit (z, Z*(z)) samples as CSV");
  c_graph->add_option("--n", graph_n, "sample count")->capture_default_str();
  c_graph->add_option("--out", out_path, "output file (default stdout)");

  auto* c_verify = app.add_subcommand("verify", "run the identity suite");

  for (auto* sub : {c_index, c_zstar, c_deriv, c_invert, c_graph, c_verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_index->parsed()) return cmd_eval_index(opt, index_text);
    if (c_zstar->parsed()) return cmd_eval_zstar(opt, point_text);
    if (c_deriv->parsed()) return cmd_derivative(opt, side, at_text);
    if (c_invert->parsed()) return cmd_invert(opt, invert_v);
    if (c_graph->parsed()) return cmd_graph(opt, graph_n, out_path);
    if (c_verify->parsed()) return cmd_verify(opt);
  } catch (const InadmissibleIndexError& e) {
    std::cerr << "error (inadmissible index): " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
