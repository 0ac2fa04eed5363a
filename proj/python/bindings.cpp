#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "luba/backtest.hpp"
#include "luba/behavioral.hpp"
#include "luba/dynamic_sim.hpp"
#include "luba/equilibrium.hpp"
#include "luba/money.hpp"
#include "luba/oracle.hpp"

#include <fstream>
#include <sstream>

namespace py = pybind11;
using namespace luba;

namespace {

MixedStrategy mixed_from_pairs(const std::vector<std::pair<std::vector<Bid>, double>>& atoms) {
  MixedStrategy s;
  for (const auto& [bids, prob] : atoms) s.support.emplace_back(BidSet(bids), prob);
  return s;
}

}  // namespace

PYBIND11_MODULE(_luba, m) {
  m.doc() = "Lowest-unique-bid auction toolkit: simulation, equilibrium analysis, backtesting";

  py::register_exception<BudgetExceededError>(m, "BudgetExceededError", PyExc_RuntimeError);

  // ------------------------------------------------------------- core ----
  py::class_<AuctionConfig>(m, "AuctionConfig")
      .def(py::init([](int n, Money value, Money bid_cost, bool promo, Money max_bid) {
             AuctionConfig c{n, value, bid_cost, promo, max_bid};
             c.validate();
             return c;
           }),
           py::arg("n"), py::arg("value"), py::arg("bid_cost"), py::arg("promo") = false,
           py::arg("max_bid") = 0)
      .def_readonly("n", &AuctionConfig::n)
      .def_readonly("value", &AuctionConfig::value)
      .def_readonly("bid_cost", &AuctionConfig::bid_cost)
      .def_readonly("promo", &AuctionConfig::promo)
      .def("bid_cap", &AuctionConfig::bid_cap);

  py::class_<BidSet>(m, "BidSet")
      .def(py::init<std::vector<Bid>>(), py::arg("bids"))
      .def_static("prefix", &BidSet::prefix)
      .def_property_readonly("values", [](const BidSet& s) { return s.values(); })
      .def("__len__", &BidSet::size)
      .def("contains", &BidSet::contains)
      .def("is_prefix", &BidSet::is_prefix)
      .def("__repr__", &BidSet::to_string)
      .def(py::self == py::self);
  py::implicitly_convertible<py::list, BidSet>();

  py::class_<BidProfile>(m, "BidProfile")
      .def(py::init([](const std::vector<std::vector<Bid>>& sets) {
             BidProfile p;
             for (const auto& s : sets) p.sets.push_back(BidSet(s));
             return p;
           }),
           py::arg("sets"))
      .def_property_readonly("sets", [](const BidProfile& p) { return p.sets; });
  py::implicitly_convertible<py::list, BidProfile>();

  py::class_<Outcome>(m, "Outcome")
      .def_readonly("winner", &Outcome::winner)
      .def_readonly("winning_bid", &Outcome::winning_bid)
      .def_readonly("unique_set", &Outcome::unique_set)
      .def("has_winner", &Outcome::has_winner)
      .def("__repr__", [](const Outcome& o) {
        if (!o.winner) return std::string("Outcome(no winner)");
        return "Outcome(winner=" + std::to_string(*o.winner) +
               ", winning_bid=" + std::to_string(*o.winning_bid) + ")";
      });

  m.def("resolve", &resolve, py::arg("profile"));
  m.def("bidder_payoffs", &bidder_payoffs, py::arg("profile"), py::arg("config"));
  m.def("seller_payoff", &seller_payoff, py::arg("profile"), py::arg("config"));
  m.def("euros_to_cents", &euros_to_cents, py::arg("euros"));

  // ----------------------------------------------------------- oracle ----
  py::class_<MixedStrategy>(m, "MixedStrategy")
      .def(py::init(&mixed_from_pairs), py::arg("support"),
           "support: list of ([bids...], probability) pairs")
      .def_static("point_mass",
                  [](const std::vector<Bid>& bids) { return MixedStrategy::point_mass(BidSet(bids)); })
      .def_property_readonly("support", [](const MixedStrategy& s) { return s.support; })
      .def("is_monotone", &MixedStrategy::is_monotone)
      .def("validate", &MixedStrategy::validate);

  py::class_<StrategySpace>(m, "StrategySpace")
      .def(py::init([](int max_bid, int max_set_size, bool monotone_only) {
             StrategySpace s{max_bid, max_set_size, monotone_only};
             s.validate();
             return s;
           }),
           py::arg("max_bid"), py::arg("max_set_size"), py::arg("monotone_only") = false)
      .def_readonly("max_bid", &StrategySpace::max_bid)
      .def_readonly("max_set_size", &StrategySpace::max_set_size)
      .def_readonly("monotone_only", &StrategySpace::monotone_only);

  m.def("expected_payoffs", &expected_payoffs, py::arg("profile"), py::arg("config"),
        py::arg("term_budget") = kDefaultTermBudget);
  m.def("expected_seller_payoff", &expected_seller_payoff, py::arg("profile"), py::arg("config"),
        py::arg("term_budget") = kDefaultTermBudget);

  py::class_<BestResponse>(m, "BestResponse")
      .def_readonly("value", &BestResponse::value)
      .def_readonly("argmax", &BestResponse::argmax);
  m.def("best_response", &best_response, py::arg("player"), py::arg("others"), py::arg("space"),
        py::arg("config"), py::arg("term_budget") = kDefaultTermBudget);

  py::class_<NashReport>(m, "NashReport")
      .def_readonly("is_eq", &NashReport::is_eq)
      .def_readonly("worst_gain", &NashReport::worst_gain)
      .def_readonly("deviating_player", &NashReport::deviating_player)
      .def_readonly("deviation", &NashReport::deviation)
      .def_readonly("expected", &NashReport::expected)
      .def_readonly("seller_expected", &NashReport::seller_expected);
  m.def("epsilon_nash_check", &epsilon_nash_check, py::arg("profile"), py::arg("space"),
        py::arg("config"), py::arg("eps"), py::arg("term_budget") = kDefaultTermBudget);

  m.def("monotone_dominance_transform", &monotone_dominance_transform, py::arg("bid_set"));

  // ------------------------------------------------------ equilibrium ----
  py::class_<MonotoneMixedStrategy>(m, "MonotoneMixedStrategy")
      .def_readonly("p_empty", &MonotoneMixedStrategy::p_empty)
      .def_readonly("p", &MonotoneMixedStrategy::p)
      .def("depth", &MonotoneMixedStrategy::depth)
      .def("prob_prefix", &MonotoneMixedStrategy::prob_prefix)
      .def("to_mixed", &MonotoneMixedStrategy::to_mixed);
  m.def("two_bidder_symmetric", &two_bidder_symmetric, py::arg("value"), py::arg("bid_cost"),
        "value/bid_cost in the bid unit (cents)");

  py::class_<NonexistenceCertificate>(m, "NonexistenceCertificate")
      .def_readonly("k", &NonexistenceCertificate::k)
      .def_readonly("value", &NonexistenceCertificate::value)
      .def_readonly("bid_cost", &NonexistenceCertificate::bid_cost)
      .def_readonly("x_empty", &NonexistenceCertificate::x_empty)
      .def_readonly("x_1", &NonexistenceCertificate::x_1)
      .def_readonly("lhs", &NonexistenceCertificate::lhs)
      .def_readonly("rhs", &NonexistenceCertificate::rhs)
      .def_readonly("necessary_holds", &NonexistenceCertificate::necessary_holds)
      .def("certified", &NonexistenceCertificate::certified);
  m.def("noneq_certificate", &noneq_certificate, py::arg("k"), py::arg("value"),
        py::arg("bid_cost"));

  m.def("asymmetric_example_profile", &asymmetric_example_profile, py::arg("n"), py::arg("value"),
        py::arg("bid_cost"));
  m.def("min_high_bid_bound", &min_high_bid_bound, py::arg("value"), py::arg("bid_cost"));

  // -------------------------------------------------------- behavioral ----
  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init(&make_noise_model), py::arg("value"), py::arg("bid_cost"), py::arg("alpha"))
      .def_readonly("value", &NoiseModel::value)
      .def_readonly("bid_cost", &NoiseModel::bid_cost)
      .def_readonly("alpha", &NoiseModel::alpha)
      .def_readonly("cutoff", &NoiseModel::cutoff)
      .def_readonly("total_intensity", &NoiseModel::total_intensity)
      .def_readonly("tail_intensity_bound", &NoiseModel::tail_intensity_bound)
      .def("lambda_at", &NoiseModel::lambda, py::arg("i"));

  py::class_<BruteForceStrategy>(m, "BruteForceStrategy")
      .def_readonly("gamma", &BruteForceStrategy::gamma)
      .def_readonly("depth", &BruteForceStrategy::depth);
  m.def("brute_force_strategy", &brute_force_strategy, py::arg("gamma"), py::arg("model"));

  m.def("sample_bid_field", &sample_bid_field, py::arg("model"), py::arg("seed"));
  m.def("gain_lower_bound", &gain_lower_bound, py::arg("value"), py::arg("bid_cost"),
        py::arg("gamma"));

  py::class_<GammaOpt>(m, "GammaOpt")
      .def_readonly("gamma_star", &GammaOpt::gamma_star)
      .def_readonly("bound_at_star", &GammaOpt::bound_at_star)
      .def_readonly("foc_residual", &GammaOpt::foc_residual);
  m.def("optimize_gamma", &optimize_gamma, py::arg("value"), py::arg("bid_cost"));

  py::class_<SimReport>(m, "SimReport")
      .def_readonly("trials", &SimReport::trials)
      .def_readonly("seed", &SimReport::seed)
      .def_readonly("depth", &SimReport::depth)
      .def_readonly("cutoff", &SimReport::cutoff)
      .def_readonly("tail_intensity_bound", &SimReport::tail_intensity_bound)
      .def_readonly("win_rate", &SimReport::win_rate)
      .def_readonly("win_rate_se", &SimReport::win_rate_se)
      .def_readonly("any_winner_rate", &SimReport::any_winner_rate)
      .def_readonly("mean_profit_eur", &SimReport::mean_profit_eur)
      .def_readonly("mean_profit_se_eur", &SimReport::mean_profit_se_eur)
      .def_readonly("mean_seller_revenue_eur", &SimReport::mean_seller_revenue_eur)
      .def_readonly("mean_seller_revenue_se_eur", &SimReport::mean_seller_revenue_se_eur)
      .def_readonly("mean_total_bids", &SimReport::mean_total_bids)
      .def_readonly("mean_winning_bid_cents", &SimReport::mean_winning_bid_cents)
      .def_readonly("analytic_win_lower_bound", &SimReport::analytic_win_lower_bound)
      .def_readonly("expected_noise_fees_eur", &SimReport::expected_noise_fees_eur)
      .def_readonly("expected_noise_fees_2x_eur", &SimReport::expected_noise_fees_2x_eur);
  m.def("simulate_strategic", &simulate_strategic, py::arg("model"), py::arg("strategy"),
        py::arg("trials"), py::arg("seed"));

  m.def(
      "export_synthetic_records",
      [](const NoiseModel& model, std::size_t n_auctions,
         const std::vector<std::pair<double, double>>& blocks, std::uint64_t seed,
         const std::string& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path);
        return export_synthetic_records(model, n_auctions, blocks, seed, out);
      },
      py::arg("model"), py::arg("n_auctions"), py::arg("blocks"), py::arg("seed"),
      py::arg("path"));

  // ----------------------------------------------------------- backtest ----
  py::enum_<ItemKind>(m, "ItemKind")
      .value("real_item", ItemKind::real_item)
      .value("coupon", ItemKind::coupon);

  py::class_<AuctionRecord>(m, "AuctionRecord")
      .def(py::init([](std::string auction_id, Money item_value, Money bid_cost,
                       const std::vector<std::pair<Bid, std::uint32_t>>& counts,
                       std::optional<Bid> winner_bid, ItemKind kind) {
             AuctionRecord r;
             r.auction_id = std::move(auction_id);
             r.item_value = item_value;
             r.bid_cost = bid_cost;
             r.item_kind = kind;
             r.counts = counts;
             r.winner_bid = winner_bid ? winner_bid : r.recompute_winner();
             r.validate();
             return r;
           }),
           py::arg("auction_id"), py::arg("item_value"), py::arg("bid_cost"), py::arg("counts"),
           py::arg("winner_bid") = std::nullopt, py::arg("item_kind") = ItemKind::real_item)
      .def_readonly("auction_id", &AuctionRecord::auction_id)
      .def_readonly("item_value", &AuctionRecord::item_value)
      .def_readonly("bid_cost", &AuctionRecord::bid_cost)
      .def_readonly("item_kind", &AuctionRecord::item_kind)
      .def_readonly("counts", &AuctionRecord::counts)
      .def_readonly("winner_bid", &AuctionRecord::winner_bid);

  py::class_<BlockStrategySpec>(m, "BlockStrategySpec")
      .def(py::init([](double x, double y) {
             BlockStrategySpec s{x, y};
             s.validate();
             return s;
           }),
           py::arg("x"), py::arg("y"))
      .def_readonly("x", &BlockStrategySpec::x)
      .def_readonly("y", &BlockStrategySpec::y);

  py::class_<InjectionResult>(m, "InjectionResult")
      .def_readonly("won", &InjectionResult::won)
      .def_readonly("winning_bid_after", &InjectionResult::winning_bid_after)
      .def_readonly("bids_placed", &InjectionResult::bids_placed)
      .def_readonly("fee_spent", &InjectionResult::fee_spent)
      .def_readonly("price_paid", &InjectionResult::price_paid)
      .def_readonly("value_won", &InjectionResult::value_won);

  m.def("block_bids", &block_bids, py::arg("spec"), py::arg("item_value"));
  m.def("inject", &inject, py::arg("record"), py::arg("spec"));

  py::enum_<SpendDenominator>(m, "SpendDenominator")
      .value("fees_plus_price", SpendDenominator::fees_plus_price)
      .value("fees_only", SpendDenominator::fees_only);

  py::class_<GridCell>(m, "GridCell")
      .def_readonly("x", &GridCell::x)
      .def_readonly("y", &GridCell::y)
      .def_readonly("performance", &GridCell::performance)
      .def_readonly("wins", &GridCell::wins)
      .def_readonly("auctions", &GridCell::auctions)
      .def_readonly("defined", &GridCell::defined);
  m.def("performance_grid", &performance_grid, py::arg("records"), py::arg("x_values"),
        py::arg("y_values"), py::arg("denominator") = SpendDenominator::fees_plus_price);

  py::class_<CdfResult>(m, "CdfResult")
      .def_readonly("points", &CdfResult::points)
      .def_readonly("excluded", &CdfResult::excluded);
  m.def("winning_bid_cdf", &winning_bid_cdf, py::arg("records"));

  m.def("lowest_free_integer", &lowest_free_integer, py::arg("record"));
  m.def("multiplicity_histogram", &multiplicity_histogram, py::arg("record"), py::arg("lo"),
        py::arg("hi"));
  m.def("z_statistic", &z_statistic, py::arg("record"));

  py::enum_<ParseMode>(m, "ParseMode")
      .value("strict", ParseMode::strict)
      .value("permissive", ParseMode::permissive);
  m.def("read_records", &read_records_file, py::arg("path"),
        py::arg("mode") = ParseMode::strict);
  m.def(
      "write_records",
      [](const std::string& path, const std::vector<AuctionRecord>& records) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path);
        write_records(out, records);
      },
      py::arg("path"), py::arg("records"));

  // -------------------------------------------------------- dynamic sim ----
  py::enum_<BidFeedback>(m, "BidFeedback")
      .value("LOWEST_UNIQUE", BidFeedback::LOWEST_UNIQUE)
      .value("UNIQUE_NOT_LOWEST", BidFeedback::UNIQUE_NOT_LOWEST)
      .value("NOT_UNIQUE", BidFeedback::NOT_UNIQUE);

  py::class_<TranscriptEvent>(m, "TranscriptEvent")
      .def_readonly("tick", &TranscriptEvent::tick)
      .def_readonly("bidder", &TranscriptEvent::bidder)
      .def_readonly("amount", &TranscriptEvent::amount)
      .def_readonly("feedback", &TranscriptEvent::feedback);

  py::class_<AuctionEngine>(m, "AuctionEngine")
      .def(py::init<AuctionConfig, std::int64_t, std::vector<Money>>(), py::arg("config"),
           py::arg("horizon"), py::arg("budgets"))
      .def("submit", &AuctionEngine::submit, py::arg("bidder"), py::arg("amount"))
      .def("status_of", &AuctionEngine::status_of, py::arg("bidder"), py::arg("amount"))
      .def("advance", &AuctionEngine::advance)
      .def("clock", &AuctionEngine::clock)
      .def("closed", &AuctionEngine::closed)
      .def("count", &AuctionEngine::count, py::arg("amount"))
      .def("lowest_unique", &AuctionEngine::lowest_unique)
      .def("remaining_budget", &AuctionEngine::remaining_budget, py::arg("bidder"))
      .def("final_outcome", &AuctionEngine::final_outcome)
      .def("transcript", &AuctionEngine::transcript);

  py::class_<AgentSpec> agent_spec(m, "AgentSpec");
  py::enum_<AgentSpec::Kind>(agent_spec, "Kind")
      .value("noisy_poisson", AgentSpec::Kind::noisy_poisson)
      .value("block", AgentSpec::Kind::block)
      .value("interval_dynamic", AgentSpec::Kind::interval_dynamic);
  agent_spec
      .def(py::init([](AgentSpec::Kind kind) {
             AgentSpec s;
             s.kind = kind;
             return s;
           }),
           py::arg("kind"))
      .def_readwrite("kind", &AgentSpec::kind)
      .def_readwrite("alpha", &AgentSpec::alpha)
      .def_readwrite("x_pct", &AgentSpec::x_pct)
      .def_readwrite("y_pct", &AgentSpec::y_pct)
      .def_readwrite("q", &AgentSpec::q)
      .def_readwrite("probe_count", &AgentSpec::probe_count)
      .def_readwrite("probe_budget", &AgentSpec::probe_budget)
      .def_readwrite("end_margin", &AgentSpec::end_margin)
      .def_readwrite("calibrated_x", &AgentSpec::calibrated_x)
      .def_readwrite("extend_above_y", &AgentSpec::extend_above_y)
      .def_readwrite("budget", &AgentSpec::budget);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("transcript", &RunResult::transcript)
      .def_readonly("outcome", &RunResult::outcome)
      .def_readonly("agent_money", &RunResult::agent_money);
  m.def("run_auction", &run_auction, py::arg("agents"), py::arg("config"), py::arg("horizon"),
        py::arg("seed"));
  m.def("calibrate_x", &calibrate_x, py::arg("history"), py::arg("q"));
  m.def(
      "write_transcript",
      [](const std::string& path, const RunResult& result) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path);
        write_transcript(out, result);
      },
      py::arg("path"), py::arg("result"));
  m.def("replay_transcript", &replay_transcript, py::arg("events"), py::arg("config"),
        py::arg("horizon"), py::arg("budgets"));

  m.attr("__version__") = "0.1.0";
}
