#include <gtest/gtest.h>

#include <random>

#include "cylbuck/config.hpp"
#include "cylbuck/error.hpp"

using namespace cylbuck;

namespace {

std::string message_of(const std::string& text) {
  try {
    parse_config(text, "cfg.yaml");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, DefaultsFromEmptyDocument) {
  const ExperimentConfig c = parse_config("");
  EXPECT_EQ(c, ExperimentConfig{});
  EXPECT_EQ(c.h, (std::vector<double>{0.04, 0.02, 0.01, 0.005, 0.0025}));
}

TEST(Config, ParsesEveryField) {
  const ExperimentConfig c = parse_config(R"(
geometry: {builder: trig, period: 3.0, samples: 128, cos: [0.0, 0.2], sin: [0.1]}
material: {E: 2.5, nu: 0.25}
shell: {L: 2.0, space: vh}
sweep: {h: [0.01, 0.02, 0.005], quantities: [korn_grad, lambda_cl]}
solver: {nt: 6, ntheta: 128, m_max: 4, m_cap: 50, theta_scheme: spectral, tolerance: 1e-9, weight: flat}
brackets: {korn_grad: {lo: 1.6, hi: 1.8, slack: 0.05}}
ansatz: {family: localized, beta: 4, center: 0.25, h: [0.001, 0.0001], quantity: korn_grad}
output: {dir: "results/a b"}
seed: 17
)");
  EXPECT_EQ(c.geometry.builder, "trig");
  EXPECT_EQ(c.geometry.cos_coeffs, (std::vector<double>{0.0, 0.2}));
  EXPECT_EQ(c.E, 2.5);
  EXPECT_EQ(c.space, Space::Vh);
  EXPECT_EQ(c.quantities, (std::vector<Quantity>{Quantity::KornGrad, Quantity::LambdaCl}));
  EXPECT_EQ(c.scheme, ThetaScheme::Spectral);
  EXPECT_EQ(c.weight, NormWeight::Flat);
  EXPECT_EQ(c.brackets.at("korn_grad"), (BracketSpec{1.6, 1.8, 0.05}));
  EXPECT_EQ(c.ansatz.beta, 4);
  ASSERT_TRUE(c.ansatz.center.has_value());
  EXPECT_EQ(*c.ansatz.center, 0.25);
  EXPECT_EQ(c.output_dir, "results/a b");
  EXPECT_EQ(c.seed, 17u);
  EXPECT_EQ(c.shell(0.01).L, 2.0);
  EXPECT_EQ(c.discretization().ntheta, 128);
  EXPECT_EQ(c.scan_options().m_max, 4);
}

TEST(Config, RoundTripsRandomConfigs) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const char* builders[] = {"circle", "oval", "trig", "flat-spot", "csv"};
  for (int trial = 0; trial < 100; ++trial) {
    ExperimentConfig c;
    c.geometry.builder = builders[trial % 5];
    c.geometry.path = trial % 5 == 4 ? "curves/x \"q\".csv" : "";
    c.geometry.period = 1.0 + 10 * u(rng);
    c.geometry.amplitude = u(rng) - 0.5;
    c.geometry.cos_coeffs = {u(rng), u(rng) / 3};
    c.geometry.zeros = 1 + trial % 3;
    c.geometry.order = 2 + 2 * (trial % 2);
    c.E = 0.1 + u(rng);
    c.nu = 0.49 * u(rng) + 0.001;
    c.L = 0.5 + u(rng);
    c.space = trial % 2 ? Space::Vh : Space::VhTheta;
    c.h = {0.3 * u(rng) + 0.01, 0.001 * u(rng) + 1e-5, 1.0 / 3.0};
    c.quantities = {Quantity::KornCol3};
    c.nt = 2 + trial % 10;
    c.ntheta = 16 + trial;
    c.m_max = 1 + trial;
    c.scheme = trial % 2 ? ThetaScheme::FD4 : ThetaScheme::FD8;
    c.tolerance = 1e-12 * (1 + u(rng));
    c.weight = trial % 3 ? NormWeight::ExactJacobian : NormWeight::Flat;
    if (trial % 2) c.brackets["lambda_cl"] = {u(rng), 1 + u(rng), 0.1 * u(rng)};
    c.ansatz.family = trial % 3 ? "kirchhoff" : "linearized-t";
    c.ansatz.exponent = 0.1 + 0.5 * u(rng);
    if (trial % 4 == 0) c.ansatz.center = u(rng);
    c.ansatz.h = trial % 2 ? std::vector<double>{1e-3, 1e-4, 1e-5} : std::vector<double>{};
    c.output_dir = "out/trial " + std::to_string(trial);
    c.seed = rng();
    const std::string text = serialize_config(c);
    EXPECT_EQ(parse_config(text), c) << text;
    EXPECT_EQ(serialize_config(parse_config(text)), text);
  }
}

TEST(Config, ErrorsNameLineColumnAndField) {
  std::string m = message_of("material:\n  E: 1.0\n  nu: 0.7\n");
  EXPECT_NE(m.find("cfg.yaml:3:7: material.nu"), std::string::npos) << m;
  m = message_of("sweep:\n  h: [0.01, -0.02]\n");
  EXPECT_NE(m.find("cfg.yaml:2:13: sweep.h[1]"), std::string::npos) << m;
  m = message_of("solver:\n  ntheta: many\n");
  EXPECT_NE(m.find("solver.ntheta"), std::string::npos) << m;
  m = message_of("shell:\n  Lenght: 2\n");
  EXPECT_NE(m.find("cfg.yaml:2:3: shell.Lenght: unknown key"), std::string::npos) << m;
  m = message_of("geometry: {builder: blob}\n");
  EXPECT_NE(m.find("circle, oval, trig, flat-spot, csv"), std::string::npos) << m;
  m = message_of("sweep: {quantities: [lambda]}\n");
  EXPECT_NE(m.find("sweep.quantities[0]"), std::string::npos) << m;
  m = message_of("brackets: {lambda_cl: {lo: 2, hi: 1}}\n");
  EXPECT_NE(m.find("lo must not exceed hi"), std::string::npos) << m;
  m = message_of("geometry: [1, 2\n");
  EXPECT_NE(m.find("syntax"), std::string::npos) << m;
  EXPECT_THROW(load_config("/nonexistent/cfg.yaml"), Error);
}
