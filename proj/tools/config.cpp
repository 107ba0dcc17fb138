#include "config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "rlan/csv.hpp"
#include "rlan/errors.hpp"

namespace rlan::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(ErrorCode code, std::size_t line, const std::string& msg) {
  throw Error(code, "line " + std::to_string(line) + ": " + msg, line);
}

double to_double(std::string_view v, std::size_t line) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() ||
      !std::isfinite(out)) {
    fail(ErrorCode::kTypeMismatch, line,
         "expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

std::uint64_t to_u64(std::string_view v, std::size_t line) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    fail(ErrorCode::kTypeMismatch, line,
         "expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view v, std::size_t line) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(ErrorCode::kTypeMismatch, line,
       "expected true or false, got '" + std::string(v) + "'");
}

template <typename T, typename Conv>
std::vector<T> to_list(std::string_view v, std::size_t line, Conv conv) {
  std::vector<T> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (item.empty()) fail(ErrorCode::kTypeMismatch, line, "empty list item");
    out.push_back(static_cast<T>(conv(item, line)));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  if (out.empty()) fail(ErrorCode::kTypeMismatch, line, "empty list");
  return out;
}

void require(bool ok, std::size_t line, const std::string& msg) {
  if (!ok) fail(ErrorCode::kInvalidArgument, line, msg);
}

bool quarter_or_half(double e) {
  return std::abs(e - 0.25) < 1e-12 || std::abs(e - 0.5) < 1e-12;
}

using Setter = std::function<void(RunConfig&, std::string_view, std::size_t)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"subcommand",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         try {
           c.subcommand = parse_subcommand(v);
         } catch (const Error&) {
           fail(ErrorCode::kTypeMismatch, line,
                "unknown subcommand '" + std::string(v) + "'");
         }
       }},
      {"master_seed",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.study.master_seed = to_u64(v, line);
       }},
      {"output_dir",
       [](RunConfig& c, std::string_view v, std::size_t) {
         c.output_dir = std::string(v);
       }},
      {"model.name",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         require(v == "gauss-mean-latent" || v == "gauss-scale", line,
                 "model must be gauss-mean-latent or gauss-scale");
         c.study.model_name = std::string(v);
       }},
      {"model.true_theta",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.study.true_theta = to_double(v, line);
       }},
      {"model.tau",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.study.model_params.tau = to_double(v, line);
         require(c.study.model_params.tau > 0.0, line, "tau must be > 0");
       }},
      {"model.sigma",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.study.model_params.sigma = to_double(v, line);
         require(c.study.model_params.sigma > 0.0, line, "sigma must be > 0");
       }},
      {"model.latent_fraction",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         const double f = to_double(v, line);
         require(f > 0.0 && f < 1.0, line,
                 "latent_fraction must lie in the open interval (0, 1)");
         c.study.model_params.latent_fraction = f;
       }},
      {"study.n_ladder",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.study.n_ladder = to_list<std::size_t>(v, line, to_u64);
         for (auto n : c.study.n_ladder) require(n >= 4, line, "n must be >= 4");
       }},
      {"study.m_exponent",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         const double a = to_double(v, line);
         require(a > 0.5 && a < 1.0, line,
                 "m_exponent must lie in the open interval (1/2, 1)");
         c.study.m_exponent = a;
       }},
      {"study.J",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         const auto j = to_u64(v, line);
         require(j >= 2, line, "J must be >= 2");
         require(j <= 1000, line, "J must be <= 1000");
         c.study.J = static_cast<int>(j);
       }},
      {"study.R",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.study.replicates = to_u64(v, line);
         require(c.study.replicates >= 100, line, "R must be >= 100");
       }},
      {"study.delta_exponent",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.study.delta_exponent = to_double(v, line);
         require(quarter_or_half(c.study.delta_exponent), line,
                 "delta_exponent must be 0.25 or 0.5");
       }},
      {"study.grid_halfwidth",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.study.grid_halfwidth = to_double(v, line);
         require(c.study.grid_halfwidth > 0.0, line,
                 "grid_halfwidth must be > 0");
       }},
      {"study.share_draws",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.study.share_draws = to_bool(v, line);
       }},
      {"study.exact_only",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.study.exact_only = to_bool(v, line);
       }},
      {"figure1.n",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.figure1.n = to_u64(v, line);
         require(c.figure1.n >= 4, line, "figure1 n must be >= 4");
       }},
      {"figure1.delta_exponent",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.figure1.delta_exponent = to_double(v, line);
         require(c.figure1.delta_exponent > 0.0, line,
                 "delta_exponent must be > 0");
       }},
      {"figure1.m_exponent",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.figure1.m_exponent = to_double(v, line);
       }},
      {"rlan.n_ladder",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.rlan.n_ladder = to_list<std::size_t>(v, line, to_u64);
         for (auto n : c.rlan.n_ladder) require(n >= 2, line, "n must be >= 2");
       }},
      {"rlan.exponents",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.rlan.exponents = to_list<double>(v, line, to_double);
         for (double e : c.rlan.exponents) {
           require(quarter_or_half(e), line, "exponents must be 0.25 or 0.5");
         }
       }},
      {"rlan.t",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.rlan.t = to_double(v, line);
         require(std::abs(c.rlan.t) <= 2.0, line, "|t| must be <= 2");
       }},
      {"rlan.replicates",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.rlan.replicates = to_u64(v, line);
         require(c.rlan.replicates >= 1, line, "replicates must be >= 1");
       }},
      {"snr.n_ladder",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.snr.n_ladder = to_list<std::size_t>(v, line, to_u64);
         for (auto n : c.snr.n_ladder) require(n >= 1, line, "n must be >= 1");
       }},
      {"snr.m_exponent",
       [](RunConfig& c, std::string_view v, std::size_t line) {
         c.snr.m_exponent = to_double(v, line);
       }},
  };
  return table;
}

bool same_study(const ScalingConfig& a, const ScalingConfig& b) {
  return a.model_name == b.model_name && a.model_params == b.model_params &&
         a.true_theta == b.true_theta && a.n_ladder == b.n_ladder &&
         a.m_exponent == b.m_exponent && a.J == b.J &&
         a.replicates == b.replicates && a.master_seed == b.master_seed &&
         a.delta_exponent == b.delta_exponent &&
         a.grid_halfwidth == b.grid_halfwidth &&
         a.share_draws == b.share_draws && a.exact_only == b.exact_only;
}

}  // namespace

std::string_view to_string(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::kFit: return "fit";
    case Subcommand::kScale: return "scale";
    case Subcommand::kFigure1: return "figure1";
    case Subcommand::kRlanCheck: return "rlan-check";
    case Subcommand::kSnr: return "snr";
  }
  return "?";
}

Subcommand parse_subcommand(std::string_view text) {
  for (auto cmd : {Subcommand::kFit, Subcommand::kScale, Subcommand::kFigure1,
                   Subcommand::kRlanCheck, Subcommand::kSnr}) {
    if (to_string(cmd) == text) return cmd;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown subcommand '" + std::string(text) + "'");
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.subcommand == b.subcommand && same_study(a.study, b.study) &&
         a.figure1 == b.figure1 && a.rlan == b.rlan && a.snr == b.snr &&
         a.output_dir == b.output_dir;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  cfg.study.model_name.clear();
  bool have_name = false;
  bool have_theta = false;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail(ErrorCode::kTypeMismatch, line_no, "malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::kTypeMismatch, line_no, "expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const std::string full =
        section.empty() ? std::string(key) : section + "." + std::string(key);
    const auto it = setters().find(full);
    if (it == setters().end()) {
      fail(ErrorCode::kUnknownKey, line_no, "unknown key '" + full + "'");
    }
    if (value.empty()) {
      fail(ErrorCode::kTypeMismatch, line_no, "missing value for '" + full + "'");
    }
    it->second(cfg, value, line_no);
    have_name = have_name || full == "model.name";
    have_theta = have_theta || full == "model.true_theta";
  }
  if (!have_name) {
    throw Error(ErrorCode::kMissingRequired, "[model] name is required");
  }
  if (!have_theta) {
    throw Error(ErrorCode::kMissingRequired, "[model] true_theta is required");
  }
  const auto model = make_model(cfg.study.model_name, cfg.study.model_params);
  if (!model->parameter_space().contains(cfg.study.true_theta)) {
    throw Error(ErrorCode::kInvalidArgument,
                "true_theta lies outside the model's parameter space");
  }
  return cfg;
}

std::string to_config_text(const RunConfig& cfg) {
  const auto num = [](double v) { return format_double(v); };
  const auto list = [](const auto& xs, auto fmt) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ", ";
      out += fmt(xs[i]);
    }
    return out;
  };
  const auto u = [](std::size_t v) { return std::to_string(v); };
  const auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  const auto& s = cfg.study;
  std::ostringstream out;
  out << "subcommand = " << to_string(cfg.subcommand) << '\n'
      << "master_seed = " << s.master_seed << '\n'
      << "output_dir = " << cfg.output_dir << '\n'
      << "\n[model]\n"
      << "name = " << s.model_name << '\n'
      << "true_theta = " << num(s.true_theta) << '\n'
      << "tau = " << num(s.model_params.tau) << '\n'
      << "sigma = " << num(s.model_params.sigma) << '\n'
      << "latent_fraction = " << num(s.model_params.latent_fraction) << '\n'
      << "\n[study]\n"
      << "n_ladder = " << list(s.n_ladder, u) << '\n'
      << "m_exponent = " << num(s.m_exponent) << '\n'
      << "J = " << s.J << '\n'
      << "R = " << s.replicates << '\n'
      << "delta_exponent = " << num(s.delta_exponent) << '\n'
      << "grid_halfwidth = " << num(s.grid_halfwidth) << '\n'
      << "share_draws = " << b(s.share_draws) << '\n'
      << "exact_only = " << b(s.exact_only) << '\n'
      << "\n[figure1]\n"
      << "n = " << cfg.figure1.n << '\n'
      << "delta_exponent = " << num(cfg.figure1.delta_exponent) << '\n'
      << "m_exponent = " << num(cfg.figure1.m_exponent) << '\n'
      << "\n[rlan]\n"
      << "n_ladder = " << list(cfg.rlan.n_ladder, u) << '\n'
      << "exponents = " << list(cfg.rlan.exponents, num) << '\n'
      << "t = " << num(cfg.rlan.t) << '\n'
      << "replicates = " << cfg.rlan.replicates << '\n'
      << "\n[snr]\n"
      << "n_ladder = " << list(cfg.snr.n_ladder, u) << '\n'
      << "m_exponent = " << num(cfg.snr.m_exponent) << '\n';
  return out.str();
}

}  // namespace rlan::cli
