#include "core/simgen.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include <nlohmann/json.hpp>

#include "core/error.hpp"

namespace compsketch {

void validate(const Scenario& s) {
  if (s.n1 < 1 || s.n2 < 1) throw_arg("scenario: n1 and n2 must be positive");
  if (s.p < 1) throw_arg("scenario: p must be positive");
  if (s.k < 1 || s.k > s.p) {
    throw_arg("scenario: k must satisfy 1 <= k <= p; got k = " + std::to_string(s.k) +
              ", p = " + std::to_string(s.p));
  }
  if (s.n1 + s.n2 <= s.p) {
    throw_dim("scenario: n1 + n2 = " + std::to_string(s.n1 + s.n2) +
              " must exceed p = " + std::to_string(s.p));
  }
  if (!(s.rho >= 0.0)) throw_arg("scenario: rho must be nonnegative");
  if (!(s.sigma >= 0.0)) throw_arg("scenario: sigma must be nonnegative");
  if (s.design_kind == DesignKind::kGaussianAr &&
      !(s.ar_base > 0.0 && s.ar_base < 1.0)) {
    throw_arg("scenario: AR correlation base must lie in (0, 1)");
  }
  if (s.design_kind == DesignKind::kAnova &&
      (s.n1 % s.p != 0 || s.n2 % s.p != 0)) {
    throw_arg("scenario: anova design requires p to divide n1 and n2; got n1 = " +
              std::to_string(s.n1) + ", n2 = " + std::to_string(s.n2) + ", p = " +
              std::to_string(s.p));
  }
}

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string design_kind_string(DesignKind kind, double ar_base) {
  switch (kind) {
    case DesignKind::kGaussianIid:
      return "gaussian_iid";
    case DesignKind::kGaussianAr:
      return "gaussian_ar(" + format_double(ar_base) + ")";
    case DesignKind::kRademacher:
      return "rademacher";
    case DesignKind::kAnova:
      return "anova";
  }
  throw_arg("unknown design kind");
}

std::string noise_kind_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kGaussian:
      return "gaussian";
    case NoiseKind::kT4Scaled:
      return "t4_scaled";
  }
  throw_arg("unknown noise kind");
}

namespace {

std::pair<DesignKind, double> parse_design_kind(const std::string& text) {
  if (text == "gaussian_iid") return {DesignKind::kGaussianIid, 0.0};
  if (text == "rademacher") return {DesignKind::kRademacher, 0.0};
  if (text == "anova") return {DesignKind::kAnova, 0.0};
  const std::string prefix = "gaussian_ar(";
  if (text.size() > prefix.size() + 1 && text.compare(0, prefix.size(), prefix) == 0 &&
      text.back() == ')') {
    const std::string inner = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    double base = 0.0;
    auto res = std::from_chars(inner.data(), inner.data() + inner.size(), base);
    if (res.ec == std::errc() && res.ptr == inner.data() + inner.size()) {
      return {DesignKind::kGaussianAr, base};
    }
  }
  throw_json("unknown design_kind: \"" + text + "\"");
}

NoiseKind parse_noise_kind(const std::string& text) {
  if (text == "gaussian") return NoiseKind::kGaussian;
  if (text == "t4_scaled") return NoiseKind::kT4Scaled;
  throw_json("unknown noise_kind: \"" + text + "\"");
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw_json(std::string("scenario JSON parse failure: ") + e.what());
  }
  Scenario s;
  try {
    const auto [kind, base] = parse_design_kind(j.at("design_kind").get<std::string>());
    s.design_kind = kind;
    if (kind == DesignKind::kGaussianAr) s.ar_base = base;
    s.noise_kind = parse_noise_kind(j.at("noise_kind").get<std::string>());
    s.n1 = j.at("n1").get<std::int64_t>();
    s.n2 = j.at("n2").get<std::int64_t>();
    s.p = j.at("p").get<std::int64_t>();
    s.k = j.at("k").get<std::int64_t>();
    s.rho = j.at("rho").get<double>();
    s.sigma = j.at("sigma").get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw_json(std::string("scenario JSON field failure: ") + e.what());
  }
  validate(s);
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  validate(s);
  nlohmann::json j;
  j["design_kind"] = design_kind_string(s.design_kind, s.ar_base);
  j["noise_kind"] = noise_kind_string(s.noise_kind);
  j["n1"] = s.n1;
  j["n2"] = s.n2;
  j["p"] = s.p;
  j["k"] = s.k;
  j["rho"] = s.rho;
  j["sigma"] = s.sigma;
  j["seed"] = s.seed;
  return j.dump(2);
}

Eigen::MatrixXd gen_design(DesignKind kind, double ar_base, std::int64_t n,
                           std::int64_t p, Engine& eng) {
  if (n < 1 || p < 1) throw_arg("gen_design: n and p must be positive");
  switch (kind) {
    case DesignKind::kGaussianIid:
      return gaussian_matrix(n, p, eng);
    case DesignKind::kGaussianAr: {
      if (!(ar_base > 0.0 && ar_base < 1.0)) {
        throw_arg("gen_design: AR correlation base must lie in (0, 1)");
      }
      // Row-wise AR(1) recursion: x_0 = g_0, x_j = b x_{j-1} + sqrt(1-b^2) g_j
      // gives exactly unit variances and correlations b^{|j-l|}.
      Eigen::MatrixXd x = gaussian_matrix(n, p, eng);
      const double carry = std::sqrt(1.0 - ar_base * ar_base);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 1; j < p; ++j) {
          x(i, j) = ar_base * x(i, j - 1) + carry * x(i, j);
        }
      }
      return x;
    }
    case DesignKind::kRademacher: {
      std::uniform_int_distribution<int> coin(0, 1);
      Eigen::MatrixXd x(n, p);
      for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
          x(i, j) = coin(eng) == 0 ? -1.0 : 1.0;
        }
      }
      return x;
    }
    case DesignKind::kAnova: {
      if (n % p != 0) {
        throw_arg("gen_design: anova requires p to divide n; got n = " +
                  std::to_string(n) + ", p = " + std::to_string(p));
      }
      const std::int64_t d = n / p;
      Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, p);
      for (Eigen::Index j = 0; j < p; ++j) {
        x.block(j * d, j, d, 1).setOnes();
      }
      return x;
    }
  }
  throw_arg("gen_design: unknown design kind");
}

GroundTruth gen_truth(std::int64_t p, std::int64_t k, double rho, Engine& eng) {
  if (p < 1 || k < 1 || k > p) throw_arg("gen_truth: requires 1 <= k <= p");
  if (!(rho >= 0.0)) throw_arg("gen_truth: rho must be nonnegative");
  GroundTruth out;
  out.beta1 = gaussian_vector(p, eng);
  const Eigen::VectorXd g = gaussian_vector(k, eng);
  out.delta = Eigen::VectorXd::Zero(p);
  if (rho > 0.0) {
    const double norm = g.norm();
    if (!(norm > 0.0)) throw_numeric("gen_truth: degenerate sphere draw");
    out.delta.head(k) = (rho / norm) * g;
  }
  out.beta2 = out.beta1 + out.delta;
  out.theta = -0.5 * out.delta;
  return out;
}

double t4_scaled_draw(Engine& eng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double z = normal(eng);
  const double u1 = 1.0 - unif(eng);  // in (0, 1]
  const double u2 = 1.0 - unif(eng);
  const double chi2_4 = -2.0 * std::log(u1 * u2);
  if (!(chi2_4 > 0.0)) return 0.0;  // u1 = u2 = 1 exactly
  // t_4 = z / sqrt(chi2_4 / 4); dividing by sqrt(2) standardizes the variance.
  return z / std::sqrt(chi2_4 / 4.0) / std::sqrt(2.0);
}

Eigen::VectorXd gen_noise(NoiseKind kind, std::int64_t n, double sigma, Engine& eng) {
  if (n < 1) throw_arg("gen_noise: n must be positive");
  if (!(sigma >= 0.0)) throw_arg("gen_noise: sigma must be nonnegative");
  Eigen::VectorXd eps(n);
  switch (kind) {
    case NoiseKind::kGaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (Eigen::Index i = 0; i < n; ++i) eps(i) = sigma * normal(eng);
      return eps;
    }
    case NoiseKind::kT4Scaled: {
      for (Eigen::Index i = 0; i < n; ++i) eps(i) = sigma * t4_scaled_draw(eng);
      return eps;
    }
  }
  throw_arg("gen_noise: unknown noise kind");
}

std::pair<TwoSampleData, GroundTruth> gen_dataset(const Scenario& s,
                                                  std::uint64_t rep_index) {
  validate(s);
  Engine e_design1 = make_engine(derive_seed(s.seed, rep_index, Stream::kDesign1));
  Engine e_design2 = make_engine(derive_seed(s.seed, rep_index, Stream::kDesign2));
  Engine e_truth = make_engine(derive_seed(s.seed, rep_index, Stream::kTruth));
  Engine e_noise1 = make_engine(derive_seed(s.seed, rep_index, Stream::kNoise1));
  Engine e_noise2 = make_engine(derive_seed(s.seed, rep_index, Stream::kNoise2));
  TwoSampleData data;
  data.x1 = gen_design(s.design_kind, s.ar_base, s.n1, s.p, e_design1);
  data.x2 = gen_design(s.design_kind, s.ar_base, s.n2, s.p, e_design2);
  GroundTruth truth = gen_truth(s.p, s.k, s.rho, e_truth);
  data.y1 = data.x1 * truth.beta1 + gen_noise(s.noise_kind, s.n1, s.sigma, e_noise1);
  data.y2 = data.x2 * truth.beta2 + gen_noise(s.noise_kind, s.n2, s.sigma, e_noise2);
  return {std::move(data), std::move(truth)};
}

}  // namespace compsketch
