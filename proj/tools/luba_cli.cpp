// luba: lowest-unique-bid auction toolkit.
// Subcommands: eq (closed forms, certificates, verification), sim (behavioral
// Monte Carlo), gen (synthetic records), backtest (block-strategy evaluation),
// dyn (dynamic auction runs). Every output file gets a .manifest.json sidecar
// describing the exact invocation; equal manifests reproduce equal bytes.

#include "CLI11.hpp"

#include "luba/backtest.hpp"
#include "luba/behavioral.hpp"
#include "luba/dynamic_sim.hpp"
#include "luba/equilibrium.hpp"
#include "luba/manifest.hpp"
#include "luba/money.hpp"
#include "luba/oracle.hpp"
#include "luba/plot.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using luba::Bid;
using luba::Money;

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, x);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

// "a:b:step" in percent; expanded with exact 1e-4-percent integer steps
std::vector<double> parse_percent_grid(const std::string& text) {
  double a = 0, b = 0, step = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || !(step > 0))
    throw std::runtime_error("grid must be formatted a:b:step with step > 0, got " + text);
  const auto unit = [](double pct) { return static_cast<std::int64_t>(std::llround(pct * 1e4)); };
  std::vector<double> values;
  for (std::int64_t u = unit(a); u <= unit(b); u += unit(step))
    values.push_back(static_cast<double>(u) / 1e4);
  if (values.empty()) throw std::runtime_error("empty grid: " + text);
  return values;
}

std::vector<luba::MixedStrategy> read_profile_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open profile file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<luba::MixedStrategy> profile;
  for (const auto& strategy : doc) {
    luba::MixedStrategy mixed;
    for (const auto& atom : strategy) {
      std::vector<Bid> bids = atom.at("set").get<std::vector<Bid>>();
      mixed.support.emplace_back(luba::BidSet(std::move(bids)), atom.at("p").get<double>());
    }
    profile.push_back(std::move(mixed));
  }
  return profile;
}

std::vector<luba::AgentSpec> read_agents_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open agents file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<luba::AgentSpec> agents;
  for (const auto& j : doc) {
    luba::AgentSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "noisy_poisson") {
      spec.kind = luba::AgentSpec::Kind::noisy_poisson;
      spec.alpha = j.value("alpha", 2.0);
    } else if (kind == "block") {
      spec.kind = luba::AgentSpec::Kind::block;
      spec.x_pct = j.value("x_pct", 0.0);
      spec.y_pct = j.value("y_pct", 2.0);
    } else if (kind == "interval_dynamic") {
      spec.kind = luba::AgentSpec::Kind::interval_dynamic;
      spec.q = j.value("q", 0.95);
      spec.probe_count = j.value("probe_count", 5);
      if (j.contains("probe_budget_eur"))
        spec.probe_budget = luba::euros_to_cents(j.at("probe_budget_eur").get<double>());
      spec.end_margin = j.value("end_margin", std::int64_t{1});
      spec.calibrated_x = j.value("x_cents", Bid{1});
      spec.extend_above_y = j.value("extend_above_y", false);
    } else {
      throw std::runtime_error("unknown agent kind: " + kind);
    }
    if (j.contains("budget_eur"))
      spec.budget = luba::euros_to_cents(j.at("budget_eur").get<double>());
    agents.push_back(spec);
  }
  return agents;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"lowest-unique-bid auction toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---------------------------------------------------------------- eq ----
  auto* eq = app.add_subcommand("eq", "equilibrium closed forms and checks");
  eq->require_subcommand(1);

  {
    auto* two = eq->add_subcommand("two-bidder",
                                   "symmetric two-bidder equilibrium (values in cents)");
    auto v = std::make_shared<Money>(0);
    auto c = std::make_shared<Money>(0);
    auto out = std::make_shared<std::string>();
    two->add_option("--v", *v, "item value, cents (the bid unit)")->required();
    two->add_option("--c", *c, "cost per bid, cents")->required();
    two->add_option("--out", *out, "write the distribution as CSV");
    two->callback([=]() {
      const luba::MonotoneMixedStrategy strat = luba::two_bidder_symmetric(*v, *c);
      std::cout << "N = " << strat.depth() << "\n";
      std::cout << "∅ " << fmt("%.6f", strat.p_empty) << "\n";
      for (int l = 1; l <= strat.depth(); ++l)
        std::cout << luba::BidSet::prefix(l).to_string() << " "
                  << fmt("%.6f", strat.prob_prefix(l)) << "\n";
      if (!out->empty()) {
        auto file = open_output(*out);
        file << "prefix_len,probability\n";
        file << "0," << fmt("%.12g", strat.p_empty) << "\n";
        for (int l = 1; l <= strat.depth(); ++l)
          file << l << "," << fmt("%.12g", strat.prob_prefix(l)) << "\n";
        luba::RunManifest manifest;
        manifest.command = "eq two-bidder";
        manifest.add_parameter("v", std::to_string(*v));
        manifest.add_parameter("c", std::to_string(*c));
        manifest.add_parameter("out", *out);
        manifest.write_alongside(*out);
      }
    });
  }

  {
    auto* noneq = eq->add_subcommand(
        "noneq", "certificate that no monotone symmetric equilibrium exists (k >= 3)");
    auto k = std::make_shared<int>(3);
    auto v = std::make_shared<Money>(0);
    auto c = std::make_shared<Money>(0);
    noneq->add_option("--k", *k, "number of bidders")->required();
    noneq->add_option("--v", *v, "item value, cents (the bid unit)")->required();
    noneq->add_option("--c", *c, "cost per bid, cents")->required();
    noneq->callback([=, &exit_code]() {
      const luba::NonexistenceCertificate cert = luba::noneq_certificate(*k, *v, *c);
      std::cout << "k = " << cert.k << "  v = " << cert.value << "  c = " << cert.bid_cost
                << "\n";
      std::cout << "x_empty = " << fmt("%.6f", cert.x_empty) << "\n";
      std::cout << "x_1 = " << fmt("%.6f", cert.x_1) << "\n";
      std::cout << "lhs = " << fmt("%.6f", cert.lhs) << (cert.necessary_holds ? " >= " : " < ")
                << "rhs = " << fmt("%.6f", cert.rhs) << "\n";
      if (cert.certified()) {
        std::cout << "certified: no monotone symmetric equilibrium\n";
      } else {
        std::cout << "necessary condition holds; certificate FAILED\n";
        exit_code = 1;
      }
    });
  }

  {
    auto* verify = eq->add_subcommand("verify", "epsilon-Nash check of a profile file");
    auto profile_path = std::make_shared<std::string>();
    auto v = std::make_shared<Money>(0);
    auto c = std::make_shared<Money>(0);
    auto max_bid = std::make_shared<int>(6);
    auto max_set = std::make_shared<int>(6);
    auto eps = std::make_shared<double>(1e-9);
    auto monotone_only = std::make_shared<bool>(false);
    verify->add_option("--profile", *profile_path, "JSON profile file")->required();
    verify->add_option("--v", *v, "item value, cents")->required();
    verify->add_option("--c", *c, "cost per bid, cents")->required();
    verify->add_option("--max-bid", *max_bid, "deviation space: highest bid");
    verify->add_option("--max-set", *max_set, "deviation space: largest set size");
    verify->add_option("--eps", *eps, "tolerated gain");
    verify->add_flag("--monotone-only", *monotone_only, "restrict deviations to prefix sets");
    verify->callback([=, &exit_code]() {
      const auto profile = read_profile_file(*profile_path);
      luba::AuctionConfig config{static_cast<int>(profile.size()), *v, *c};
      luba::StrategySpace space{*max_bid, *max_set, *monotone_only};
      const luba::NashReport report = luba::epsilon_nash_check(profile, space, config, *eps);
      for (std::size_t i = 0; i < report.expected.size(); ++i)
        std::cout << "player " << i << " expected payoff = " << fmt("%.9g", report.expected[i])
                  << "\n";
      std::cout << "seller expected payoff = " << fmt("%.9g", report.seller_expected) << "\n";
      std::cout << "worst gain = " << fmt("%.9g", report.worst_gain) << " (player "
                << report.deviating_player << ", deviation "
                << report.deviation.to_string() << ")\n";
      if (report.is_eq) {
        std::cout << "equilibrium within eps = " << fmt("%.2g", *eps) << "\n";
      } else {
        std::cout << "NOT an equilibrium at eps = " << fmt("%.2g", *eps) << "\n";
        exit_code = 1;
      }
    });
  }

  // --------------------------------------------------------------- sim ----
  auto* sim = app.add_subcommand("sim", "behavioral model simulation");
  {
    auto* beh = sim->add_subcommand("behavioral", "strategic bidder vs Poisson noise");
    auto v = std::make_shared<std::string>();
    auto c = std::make_shared<std::string>();
    auto alpha = std::make_shared<double>(2.0);
    auto gamma = std::make_shared<double>(0.0);
    auto optimize = std::make_shared<bool>(false);
    auto trials = std::make_shared<std::uint64_t>(10000);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto out = std::make_shared<std::string>();
    beh->add_option("--v", *v, "item value, euros")->required();
    beh->add_option("--c", *c, "cost per bid, euros")->required();
    beh->add_option("--alpha", *alpha, "noise decay exponent");
    auto* gopt = beh->add_option("--gamma", *gamma, "brute-force depth factor");
    auto* oopt = beh->add_flag("--optimize", *optimize, "pick gamma maximizing the gain bound");
    gopt->excludes(oopt);
    beh->add_option("--trials", *trials, "Monte Carlo trials");
    beh->add_option("--seed", *seed, "RNG seed");
    beh->add_option("--out", *out, "write the report as key,value CSV");
    beh->callback([=]() {
      const Money v_cents = luba::parse_euros(*v);
      const Money c_cents = luba::parse_euros(*c);
      const luba::NoiseModel model = luba::make_noise_model(v_cents, c_cents, *alpha);
      double g = *gamma;
      if (*optimize) {
        const luba::GammaOpt opt =
            luba::optimize_gamma(static_cast<double>(v_cents), static_cast<double>(c_cents));
        g = opt.gamma_star;
        std::cout << "gamma* = " << fmt("%.6f", g)
                  << "  bound = " << fmt("%.4f", opt.bound_at_star / 100.0)
                  << " eur  foc residual = " << fmt("%.3g", opt.foc_residual) << "\n";
      } else if (!(g > 0)) {
        throw std::runtime_error("pass --gamma or --optimize");
      }
      const luba::BruteForceStrategy strat = luba::brute_force_strategy(g, model);
      const luba::SimReport report = luba::simulate_strategic(model, strat, *trials, *seed);
      std::cout << "trials = " << report.trials << "  seed = " << report.seed << "\n";
      std::cout << "gamma = " << fmt("%.6f", g) << "  depth = " << report.depth << "\n";
      std::cout << "cutoff = " << report.cutoff
                << "  dropped intensity < " << fmt("%.3g", report.tail_intensity_bound) << "\n";
      std::cout << "win_rate = " << fmt("%.6f", report.win_rate) << " (se "
                << fmt("%.6f", report.win_rate_se)
                << ")  analytic lower bound = " << fmt("%.6f", report.analytic_win_lower_bound)
                << "\n";
      std::cout << "mean_profit_eur = " << fmt("%.4f", report.mean_profit_eur) << " (se "
                << fmt("%.4f", report.mean_profit_se_eur) << ")\n";
      std::cout << "mean_seller_revenue_eur = " << fmt("%.4f", report.mean_seller_revenue_eur)
                << " (se " << fmt("%.4f", report.mean_seller_revenue_se_eur) << ")\n";
      std::cout << "mean_total_bids = " << fmt("%.2f", report.mean_total_bids) << "\n";
      std::cout << "expected_noise_fees_eur = " << fmt("%.4f", report.expected_noise_fees_eur)
                << "  doubled-intensity figure = "
                << fmt("%.4f", report.expected_noise_fees_2x_eur) << "\n";
      if (!out->empty()) {
        auto file = open_output(*out);
        file << "key,value\n";
        file << "trials," << report.trials << "\n";
        file << "seed," << report.seed << "\n";
        file << "gamma," << fmt("%.12g", g) << "\n";
        file << "depth," << report.depth << "\n";
        file << "cutoff," << report.cutoff << "\n";
        file << "win_rate," << fmt("%.12g", report.win_rate) << "\n";
        file << "win_rate_se," << fmt("%.12g", report.win_rate_se) << "\n";
        file << "analytic_win_lower_bound," << fmt("%.12g", report.analytic_win_lower_bound)
             << "\n";
        file << "mean_profit_eur," << fmt("%.12g", report.mean_profit_eur) << "\n";
        file << "mean_profit_se_eur," << fmt("%.12g", report.mean_profit_se_eur) << "\n";
        file << "mean_seller_revenue_eur," << fmt("%.12g", report.mean_seller_revenue_eur)
             << "\n";
        file << "mean_seller_revenue_se_eur," << fmt("%.12g", report.mean_seller_revenue_se_eur)
             << "\n";
        file << "mean_total_bids," << fmt("%.12g", report.mean_total_bids) << "\n";
        file << "expected_noise_fees_eur," << fmt("%.12g", report.expected_noise_fees_eur)
             << "\n";
        file << "expected_noise_fees_2x_eur," << fmt("%.12g", report.expected_noise_fees_2x_eur)
             << "\n";
        luba::RunManifest manifest;
        manifest.command = "sim behavioral";
        manifest.seed = *seed;
        manifest.add_parameter("v", *v);
        manifest.add_parameter("c", *c);
        manifest.add_parameter("alpha", fmt("%.12g", *alpha));
        manifest.add_parameter("gamma", fmt("%.12g", g));
        manifest.add_parameter("optimize", *optimize ? "true" : "false");
        manifest.add_parameter("trials", std::to_string(*trials));
        manifest.add_parameter("seed", std::to_string(*seed));
        manifest.add_parameter("out", *out);
        manifest.write_alongside(*out);
      }
    });
  }

  // --------------------------------------------------------------- gen ----
  auto* gen = app.add_subcommand("gen", "synthetic data generation");
  {
    auto* synth = gen->add_subcommand("synthetic", "noise-field auction records");
    auto n = std::make_shared<std::size_t>(100);
    auto v = std::make_shared<std::string>();
    auto c = std::make_shared<std::string>();
    auto alpha = std::make_shared<double>(2.0);
    auto blocks = std::make_shared<std::vector<std::string>>();
    auto seed = std::make_shared<std::uint64_t>(1);
    auto out = std::make_shared<std::string>();
    synth->add_option("--n", *n, "number of auctions")->required();
    synth->add_option("--v", *v, "item value, euros")->required();
    synth->add_option("--c", *c, "cost per bid, euros")->required();
    synth->add_option("--alpha", *alpha, "noise decay exponent");
    synth->add_option("--block", *blocks, "extra block bidder \"x,y\" in percent (repeatable)");
    synth->add_option("--seed", *seed, "RNG seed");
    synth->add_option("--out", *out, "records file (JSON lines)")->required();
    synth->callback([=]() {
      const luba::NoiseModel model =
          luba::make_noise_model(luba::parse_euros(*v), luba::parse_euros(*c), *alpha);
      std::vector<std::pair<double, double>> block_pcts;
      for (const std::string& text : *blocks) {
        double x = 0, y = 0;
        if (std::sscanf(text.c_str(), "%lf,%lf", &x, &y) != 2)
          throw std::runtime_error("--block expects \"x,y\" in percent, got " + text);
        block_pcts.emplace_back(x, y);
      }
      auto file = open_output(*out);
      const std::size_t written =
          luba::export_synthetic_records(model, *n, block_pcts, *seed, file);
      file.close();
      std::cout << "wrote " << written << " records to " << *out << "\n";
      luba::RunManifest manifest;
      manifest.command = "gen synthetic";
      manifest.seed = *seed;
      manifest.add_parameter("n", std::to_string(*n));
      manifest.add_parameter("v", *v);
      manifest.add_parameter("c", *c);
      manifest.add_parameter("alpha", fmt("%.12g", *alpha));
      for (std::size_t i = 0; i < blocks->size(); ++i)
        manifest.add_parameter("block" + std::to_string(i), (*blocks)[i]);
      manifest.add_parameter("seed", std::to_string(*seed));
      manifest.add_parameter("out", *out);
      manifest.write_alongside(*out);
    });
  }

  // ---------------------------------------------------------- backtest ----
  auto* backtest = app.add_subcommand("backtest", "block-strategy evaluation on records");
  backtest->require_subcommand(1);

  {
    auto* grid = backtest->add_subcommand("grid", "performance grid over (x, y) blocks");
    auto records_path = std::make_shared<std::string>();
    auto x_grid = std::make_shared<std::string>("0.1:2.0:0.1");
    auto y_grid = std::make_shared<std::string>("0.2:2.1:0.1");
    auto denominator = std::make_shared<std::string>("total");
    auto out = std::make_shared<std::string>();
    auto svg = std::make_shared<std::string>();
    grid->add_option("--records", *records_path, "records file")->required();
    grid->add_option("--x-grid", *x_grid, "lower extremes, percent, a:b:step");
    grid->add_option("--y-grid", *y_grid, "upper extremes, percent, a:b:step");
    grid->add_option("--denominator", *denominator, "'total' (fees + prices) or 'fees'")
        ->check(CLI::IsMember({"total", "fees"}));
    grid->add_option("--out", *out, "grid CSV file")->required();
    grid->add_option("--svg", *svg, "also render the grid as an SVG heatmap");
    grid->callback([=]() {
      const auto records = luba::read_records_file(*records_path);
      const auto grid_cells = luba::performance_grid(
          records, parse_percent_grid(*x_grid), parse_percent_grid(*y_grid),
          *denominator == "fees" ? luba::SpendDenominator::fees_only
                                 : luba::SpendDenominator::fees_plus_price);
      auto file = open_output(*out);
      luba::write_grid_csv(file, grid_cells);
      file.close();
      if (!svg->empty()) {
        auto svg_file = open_output(*svg);
        svg_file << luba::svg_heatmap(grid_cells, "block strategy performance");
        svg_file.close();
        luba::RunManifest m;
        m.command = "backtest grid";
        m.add_parameter("records", *records_path);
        m.add_parameter("svg", *svg);
        m.add_input(*records_path);
        m.write_alongside(*svg);
      }
      const luba::GridCell* best = nullptr;
      for (const auto& cell : grid_cells)
        if (cell.defined && (!best || cell.performance > best->performance)) best = &cell;
      if (best)
        std::cout << "grid: " << grid_cells.size() << " cells; best performance = "
                  << fmt("%.6g", best->performance) << " at x = " << fmt("%.4g", best->x)
                  << ", y = " << fmt("%.4g", best->y) << "\n";
      luba::RunManifest manifest;
      manifest.command = "backtest grid";
      manifest.add_parameter("records", *records_path);
      manifest.add_parameter("x-grid", *x_grid);
      manifest.add_parameter("y-grid", *y_grid);
      manifest.add_parameter("denominator", *denominator);
      manifest.add_parameter("out", *out);
      manifest.add_input(*records_path);
      manifest.write_alongside(*out);
    });
  }

  {
    auto* inject_cmd = backtest->add_subcommand("inject", "inject one block strategy");
    auto records_path = std::make_shared<std::string>();
    auto x = std::make_shared<double>(0.0);
    auto y = std::make_shared<double>(2.0);
    auto per_auction = std::make_shared<bool>(false);
    inject_cmd->add_option("--records", *records_path, "records file")->required();
    inject_cmd->add_option("--x", *x, "lower extreme, percent")->required();
    inject_cmd->add_option("--y", *y, "upper extreme, percent")->required();
    inject_cmd->add_flag("--per-auction", *per_auction, "print one line per auction");
    inject_cmd->callback([=]() {
      const auto records = luba::read_records_file(*records_path);
      const luba::BlockStrategySpec spec{*x, *y};
      Money value_won = 0, fees = 0, prices = 0;
      std::int64_t wins = 0;
      if (*per_auction) std::cout << "auction_id,won,winning_bid_after_cents,fee_eur,price_eur\n";
      for (const auto& record : records) {
        const luba::InjectionResult r = luba::inject(record, spec);
        value_won += r.value_won;
        fees += r.fee_spent;
        prices += r.price_paid;
        wins += r.won ? 1 : 0;
        if (*per_auction) {
          std::cout << record.auction_id << "," << (r.won ? 1 : 0) << ",";
          if (r.winning_bid_after)
            std::cout << *r.winning_bid_after;
          else
            std::cout << "none";
          std::cout << "," << fmt("%.2f", luba::cents_to_euros(r.fee_spent)) << ","
                    << fmt("%.2f", luba::cents_to_euros(r.price_paid)) << "\n";
        }
      }
      std::cout << "auctions = " << records.size() << "  wins = " << wins << "\n";
      std::cout << "value_won_eur = " << fmt("%.2f", luba::cents_to_euros(value_won)) << "\n";
      std::cout << "fees_eur = " << fmt("%.2f", luba::cents_to_euros(fees))
                << "  prices_eur = " << fmt("%.2f", luba::cents_to_euros(prices)) << "\n";
      if (fees + prices > 0)
        std::cout << "performance_total = "
                  << fmt("%.6g", static_cast<double>(value_won) /
                                     static_cast<double>(fees + prices))
                  << "\n";
      if (fees > 0)
        std::cout << "performance_fees_only = "
                  << fmt("%.6g", static_cast<double>(value_won) / static_cast<double>(fees))
                  << "\n";
    });
  }

  {
    auto* stats = backtest->add_subcommand("stats", "seller statistics, CDF, histograms, z");
    auto records_path = std::make_shared<std::string>();
    auto cdf = std::make_shared<bool>(false);
    auto hist = std::make_shared<std::string>();
    auto z_flag = std::make_shared<bool>(false);
    auto auction_id = std::make_shared<std::string>();
    auto svg_cdf = std::make_shared<std::string>();
    auto svg_hist = std::make_shared<std::string>();
    stats->add_option("--records", *records_path, "records file")->required();
    stats->add_flag("--cdf", *cdf, "print the winning-bid/value CDF");
    stats->add_option("--hist", *hist, "print a bid-count histogram over lo:hi");
    stats->add_flag("--z", *z_flag, "print per-auction z statistics");
    stats->add_option("--auction", *auction_id, "auction id for --hist (default: first)");
    stats->add_option("--svg-cdf", *svg_cdf, "render the CDF as an SVG step plot");
    stats->add_option("--svg-hist", *svg_hist, "render the histogram as an SVG bar chart");
    stats->callback([=]() {
      const auto records = luba::read_records_file(*records_path);
      if (records.empty()) throw std::runtime_error("no records");

      // seller profit per auction: fees + winning bid - item value
      double sum = 0, sumsq = 0;
      std::size_t no_winner = 0;
      for (const auto& record : records) {
        std::int64_t total_bids = 0;
        for (const auto& [bid, count] : record.counts) total_bids += count;
        Money profit = record.bid_cost * total_bids;
        if (record.winner_bid)
          profit += *record.winner_bid - record.item_value;
        else
          ++no_winner;
        const double eur = luba::cents_to_euros(profit);
        sum += eur;
        sumsq += eur * eur;
      }
      const double n = static_cast<double>(records.size());
      const double mean = sum / n;
      const double sd = n > 1 ? std::sqrt(std::max(0.0, (sumsq - n * mean * mean) / (n - 1)))
                              : 0.0;
      std::cout << "records = " << records.size() << "  no_winner = " << no_winner << "\n";
      std::cout << "seller_profit_eur mean = " << fmt("%.6g", mean)
                << "  sd = " << fmt("%.6g", sd) << "\n";

      const auto write_svg = [&](const std::string& path, const std::string& content,
                                 const char* what) {
        auto file = open_output(path);
        file << content;
        file.close();
        luba::RunManifest m;
        m.command = std::string("backtest stats ") + what;
        m.add_parameter("records", *records_path);
        m.add_parameter("out", path);
        m.add_input(*records_path);
        m.write_alongside(path);
      };

      if (*cdf || !svg_cdf->empty()) {
        const luba::CdfResult result = luba::winning_bid_cdf(records);
        if (*cdf) {
          std::cout << "ratio_pct,cum_fraction\n";
          for (const auto& [ratio, frac] : result.points)
            std::cout << fmt("%.6g", ratio) << "," << fmt("%.6g", frac) << "\n";
          std::cout << "excluded_no_winner = " << result.excluded << "\n";
          double below_two = 0.0;
          for (const auto& [ratio, frac] : result.points)
            if (ratio < 2.0) below_two = frac;
          std::cout << "fraction_below_2pct = " << fmt("%.6g", below_two) << "\n";
        }
        if (!svg_cdf->empty())
          write_svg(*svg_cdf, luba::svg_cdf(result.points, "winning bid / value CDF"),
                    "svg-cdf");
      }

      if (!hist->empty()) {
        long long lo = 0, hi = 0;
        if (std::sscanf(hist->c_str(), "%lld:%lld", &lo, &hi) != 2)
          throw std::runtime_error("--hist expects lo:hi, got " + *hist);
        const luba::AuctionRecord* record = &records.front();
        if (!auction_id->empty()) {
          record = nullptr;
          for (const auto& r : records)
            if (r.auction_id == *auction_id) record = &r;
          if (!record) throw std::runtime_error("auction id not found: " + *auction_id);
        }
        const auto bars = luba::multiplicity_histogram(*record, lo, hi);
        std::cout << "histogram for " << record->auction_id << "\ninteger_cents,count\n";
        for (const auto& [bid, count] : bars) std::cout << bid << "," << count << "\n";
        if (!svg_hist->empty())
          write_svg(*svg_hist, luba::svg_histogram(bars, "bids per integer, " + record->auction_id),
                    "svg-hist");
      }

      if (*z_flag) {
        std::cout << "auction_id,z\n";
        for (const auto& record : records)
          std::cout << record.auction_id << "," << luba::z_statistic(record) << "\n";
        std::cout << "z_quantile_0.95 = " << luba::calibrate_x(records, 0.95) << "\n";
      }
    });
  }

  // --------------------------------------------------------------- dyn ----
  auto* dyn = app.add_subcommand("dyn", "dynamic auction engine");
  {
    auto* run = dyn->add_subcommand("run", "run one dynamic auction");
    auto agents_path = std::make_shared<std::string>();
    auto v = std::make_shared<std::string>();
    auto c = std::make_shared<std::string>();
    auto horizon = std::make_shared<std::int64_t>(20);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto out = std::make_shared<std::string>();
    run->add_option("--agents", *agents_path, "agents spec file (JSON)")->required();
    run->add_option("--v", *v, "item value, euros")->required();
    run->add_option("--c", *c, "cost per bid, euros")->required();
    run->add_option("--horizon", *horizon, "ticks");
    run->add_option("--seed", *seed, "RNG seed");
    run->add_option("--out", *out, "transcript file (JSON lines)")->required();
    run->callback([=]() {
      const auto agents = read_agents_file(*agents_path);
      luba::AuctionConfig config{static_cast<int>(agents.size()), luba::parse_euros(*v),
                                 luba::parse_euros(*c)};
      const luba::RunResult result = luba::run_auction(agents, config, *horizon, *seed);
      auto file = open_output(*out);
      luba::write_transcript(file, result);
      file.close();
      std::cout << "events = " << result.transcript.size() << "\n";
      if (result.outcome.winner)
        std::cout << "winner = agent " << *result.outcome.winner << " at "
                  << *result.outcome.winning_bid << " cents\n";
      else
        std::cout << "no winner\n";
      for (std::size_t i = 0; i < result.agent_money.size(); ++i)
        std::cout << "agent " << i << " money_eur = "
                  << fmt("%.2f", luba::cents_to_euros(result.agent_money[i])) << "\n";
      luba::RunManifest manifest;
      manifest.command = "dyn run";
      manifest.seed = *seed;
      manifest.add_parameter("agents", *agents_path);
      manifest.add_parameter("v", *v);
      manifest.add_parameter("c", *c);
      manifest.add_parameter("horizon", std::to_string(*horizon));
      manifest.add_parameter("seed", std::to_string(*seed));
      manifest.add_parameter("out", *out);
      manifest.add_input(*agents_path);
      manifest.write_alongside(*out);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
