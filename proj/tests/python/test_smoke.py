"""Smoke tests for the _luba python module."""

import math

import pytest

luba = pytest.importorskip("luba")


def test_resolve_and_payoffs():
    out = luba.resolve([[1, 2], [1]])
    assert out.winner == 0
    assert out.winning_bid == 2
    assert out.unique_set == [2]

    config = luba.AuctionConfig(2, 4, 1)
    assert luba.bidder_payoffs([[1], [1, 2]], config) == [-1, 0]
    assert luba.seller_payoff([[1], [1, 2]], config) == 1

    no_winner = luba.resolve([[1], [1]])
    assert no_winner.winner is None


def test_two_bidder_symmetric():
    s = luba.two_bidder_symmetric(4, 1)
    assert s.depth() == 2
    assert s.p_empty == pytest.approx(1 / 3, abs=1e-12)
    assert s.p == pytest.approx([0.5, 1 / 6], abs=1e-12)

    with pytest.raises(Exception):
        luba.two_bidder_symmetric(2, 1)


def test_oracle_round_trip():
    config = luba.AuctionConfig(2, 4, 1)
    sigma = luba.two_bidder_symmetric(4, 1).to_mixed()
    payoffs = luba.expected_payoffs([sigma, sigma], config)
    assert payoffs == pytest.approx([0.0, 0.0], abs=1e-9)

    report = luba.epsilon_nash_check([sigma, sigma], luba.StrategySpace(6, 6), config, 1e-9)
    assert report.is_eq

    point = luba.MixedStrategy.point_mass([1])
    bad = luba.epsilon_nash_check([point, point], luba.StrategySpace(5, 5), config, 1e-9)
    assert not bad.is_eq
    assert bad.worst_gain == pytest.approx(1.0)


def test_noneq_certificate():
    cert = luba.noneq_certificate(3, 100, 2)
    assert cert.rhs == 2.25
    assert cert.lhs < cert.rhs
    assert cert.certified()


def test_dominance_transform():
    first, second = luba.monotone_dominance_transform(luba.BidSet([1, 3, 4]))
    assert first.values == [1, 2, 4]
    assert second.values == [1]


def test_behavioral():
    model = luba.NoiseModel(50000, 50, 2.0)
    assert model.cutoff >= 100000
    assert model.lambda_at(1) == pytest.approx(1000.0)

    opt = luba.optimize_gamma(500, 0.5)
    assert 3.85 <= opt.gamma_star <= 4.0
    assert opt.foc_residual < 1e-6

    strat = luba.brute_force_strategy(4.0, model)
    assert strat.depth == 126
    report = luba.simulate_strategic(model, strat, 300, 7)
    assert report.win_rate >= math.exp(-1 / 16) - 3 * report.win_rate_se

    field = luba.sample_bid_field(model, 1)
    assert sum(field.values()) > 0


def test_backtest(tmp_path):
    record = luba.AuctionRecord("a", 1000, 50, [(1, 2), (2, 1), (4, 1)])
    assert record.winner_bid == 2
    assert luba.lowest_free_integer(record) == 3
    assert luba.z_statistic(record) == 1

    result = luba.inject(record, luba.BlockStrategySpec(0.2, 0.3))
    assert result.won
    assert result.winning_bid_after == 3

    path = tmp_path / "records.jsonl"
    luba.write_records(str(path), [record])
    parsed = luba.read_records(str(path))
    assert len(parsed) == 1
    assert parsed[0].counts == [(1, 2), (2, 1), (4, 1)]

    grid = luba.performance_grid([record], [0.1], [2.0])
    assert len(grid) == 1
    assert grid[0].auctions == 1


def test_dynamic_engine():
    config = luba.AuctionConfig(2, 10000, 50)
    engine = luba.AuctionEngine(config, 10, [10**9, 10**9])
    assert engine.submit(0, 5) == luba.BidFeedback.LOWEST_UNIQUE
    assert engine.submit(1, 5) == luba.BidFeedback.NOT_UNIQUE
    assert engine.status_of(0, 5) == luba.BidFeedback.NOT_UNIQUE

    block = luba.AgentSpec(luba.AgentSpec.Kind.block)
    block.x_pct = 0.0
    block.y_pct = 2.0
    result = luba.run_auction([block], luba.AuctionConfig(1, 50000, 50), 5, 1)
    assert result.outcome.winner == 0
    assert result.outcome.winning_bid == 1

    luba.replay_transcript(result.transcript, luba.AuctionConfig(1, 50000, 50), 5, [2**60])


def test_calibration():
    history = [
        luba.AuctionRecord("h%d" % z, 1000, 50,
                           [(j, 3) for j in range(1, z)] + [(z, 1)])
        for z in range(1, 101)
    ]
    assert luba.calibrate_x(history, 0.95) == 95
