"""
Integration tests for the command-line interface.
"""
import json
import pytest
from click.testing import CliRunner

from app.bb84.schemas import ProtocolReport
from main import cli


@pytest.fixture
def runner():
    """Create a CLI runner."""
    return CliRunner()


def _json(result) -> object:
    assert result.exit_code == 0, result.stderr
    return json.loads(result.stdout)


class TestRateCommands:
    """Test cases for threshold, rates, audit-code and capacity."""
    
    def test_threshold_shannon(self, runner):
        """Test the Shannon-limit threshold near 1.5%."""
        payload = _json(runner.invoke(cli, ["threshold", "--rate", "shannon"]))
        
        assert payload["rate_mode"] == "shannon"
        assert payload["qber_max"] == pytest.approx(0.0150, abs=0.0005)
        assert payload["h_bound"] == pytest.approx(0.1125178, abs=2e-6)
    
    def test_threshold_empty_region(self, runner):
        """Test that a rate of 1/2 exits with a domain error."""
        result = runner.invoke(cli, ["threshold", "--rate", "0.5"])
        
        assert result.exit_code == 3
        assert "EMPTY_FEASIBILITY_REGION" in result.stderr
        assert "empty feasibility region" in result.stderr
    
    def test_threshold_rejects_bad_rate(self, runner):
        """Test that a non-numeric rate is a usage error."""
        result = runner.invoke(cli, ["threshold", "--rate", "fast"])
        
        assert result.exit_code == 2
    
    def test_rates_single_point(self, runner):
        """Test the worked operating point |S| = 100000, q = 1%, r = 0.95."""
        rows = _json(runner.invoke(cli, [
            "rates", "--sifted-len", "100000", "--qber-start", "0.01", "--qber-end", "0.01", "--rate", "0.95",
        ]))
        
        assert len(rows) == 1
        assert rows[0]["parity_bits"] == 5263
        assert rows[0]["key_len_n"] == 13131
        assert rows[0]["net_bits"] == 7868
        assert rows[0]["feasible"] is True
    
    def test_rates_grid(self, runner):
        """Test the default grid 0, 0.01, ..., 0.05."""
        rows = _json(runner.invoke(cli, ["rates"]))
        
        assert [row["qber"] for row in rows] == [0.0, 0.01, 0.02, 0.03, 0.04, 0.05]
    
    def test_rates_csv(self, runner):
        """Test CSV output with a header row."""
        result = runner.invoke(cli, ["rates", "--format", "csv"])
        lines = result.stdout.splitlines()
        
        assert result.exit_code == 0
        assert lines[0].startswith("sifted_len,qber,")
        assert len(lines) == 7
    
    def test_audit_hamming(self, runner):
        """Test that the (7,4) code is infeasible at any QBER."""
        payload = _json(runner.invoke(cli, ["audit-code", "--n-total", "7", "--k-info", "4", "--operating-qber", "0.0"]))
        
        assert payload["verdict"] == "INFEASIBLE"
        assert payload["qber_max"] is None
    
    def test_audit_high_rate_code(self, runner):
        """Test that a rate-0.95 code is feasible at 1%."""
        payload = _json(runner.invoke(cli, ["audit-code", "--n-total", "100", "--k-info", "95", "--operating-qber", "0.01"]))
        
        assert payload["verdict"] == "FEASIBLE"
        assert payload["qber_max"] > 0.01
    
    def test_audit_swapped_dimensions(self, runner):
        """Test that k > n exits with a domain error."""
        result = runner.invoke(cli, ["audit-code", "--n-total", "4", "--k-info", "7", "--operating-qber", "0.01"])
        
        assert result.exit_code == 3
        assert "INVALID_PARAMETER" in result.stderr
    
    def test_capacity_rows(self, runner):
        """Test one row per sifted length."""
        rows = _json(runner.invoke(cli, ["capacity", "--qber", "0.05"]))
        
        assert [row["sifted_len"] for row in rows] == [1000, 10000, 100000]


class TestAnalysisCommands:
    """Test cases for distance, markov and counterexample."""
    
    def test_distance(self, runner):
        """Test N = 4, epsilon = 0.1."""
        payload = _json(runner.invoke(cli, ["distance", "--n", "4", "--epsilon", "0.1"]))
        
        assert payload["variational_distance"] == pytest.approx(0.1)
        assert payload["guessing_prob"] == pytest.approx(0.3)
        assert payload["theorem1_bound"] == pytest.approx(0.35)
    
    def test_distance_with_random_check(self, runner):
        """Test that --random-check adds the random-ensemble check."""
        payload = _json(runner.invoke(cli, ["distance", "--n", "4", "--epsilon", "0.1", "--random-check", "--trials", "50"]))
        
        assert payload["random_check"]["trials"] == 50
        assert payload["random_check"]["holds"] is True
    
    def test_markov_double(self, runner):
        """Test the two-layer optimum at epsilon = 1e-6."""
        payload = _json(runner.invoke(cli, ["markov", "--epsilon", "1e-6", "--double"]))
        
        assert payload["sigma_values"] == pytest.approx([0.01, 0.01], abs=1e-6)
        assert payload["failure_prob"] == pytest.approx(0.029701, abs=1e-6)
    
    def test_markov_single(self, runner):
        """Test the one-layer optimum at epsilon = 1e-6."""
        payload = _json(runner.invoke(cli, ["markov", "--epsilon", "1e-6"]))
        
        assert payload["sigma_values"] == pytest.approx([0.001], abs=1e-9)
    
    def test_markov_double_close_to_one(self, runner):
        """Test that epsilon just below 1 returns a result instead of failing in the optimizer."""
        payload = _json(runner.invoke(cli, ["markov", "--epsilon", "0.999999", "--double", "--precision", "17"]))
        
        assert payload["failure_prob"] <= 1.0
        assert all(0.0 < sigma < 1.0 for sigma in payload["sigma_values"])
    
    def test_counterexample(self, runner):
        """Test the repetition(3) breach."""
        payload = _json(runner.invoke(cli, ["counterexample"]))
        
        assert (payload["p1_s"], payload["p1_l"], payload["p1_k"]) == (0.25, 1.0, 1.0)
    
    def test_counterexample_size_limit(self, runner):
        """Test that oversize codes exit with a domain error."""
        result = runner.invoke(cli, ["counterexample", "--code", "repetition21"])
        
        assert result.exit_code == 3
        assert "DESK_SCALE_LIMIT" in result.stderr
    
    def test_counterexample_unknown_code(self, runner):
        """Test that an unknown code name exits with a one-line diagnostic."""
        result = runner.invoke(cli, ["counterexample", "--code", "golay"])
        
        assert result.exit_code == 3
        assert "INVALID_PARAMETER" in result.stderr
        assert "unknown code 'golay'" in result.stderr


class TestSimulationCommands:
    """Test cases for simulate and sweep."""
    
    def test_simulate_is_byte_identical(self, runner):
        """Test that the same arguments give the same output bytes."""
        args = ["simulate", "--qber", "0.02", "--seed", "11"]
        
        first = runner.invoke(cli, args)
        second = runner.invoke(cli, args)
        
        assert first.exit_code == 0
        assert first.stdout == second.stdout
    
    def test_simulate_full_precision_round_trip(self, runner):
        """Test that 17 significant digits reproduce the report exactly."""
        args = ["simulate", "--qber", "0.03", "--seed", "5", "--precision", "17"]
        
        payload = _json(runner.invoke(cli, args))
        report = ProtocolReport.model_validate(payload)
        
        assert report.config.rng_seed == 5
        assert report.ledger.net_bits + report.ledger.pad_bits_spent == report.ledger.key_bits_generated
    
    def test_simulate_csv(self, runner):
        """Test that CSV output flattens the ledger into dotted columns."""
        result = runner.invoke(cli, ["simulate", "--qber", "0.01", "--format", "csv"])
        header = result.stdout.splitlines()[0].split(",")
        
        assert result.exit_code == 0
        assert "ledger.net_bits" in header
        assert "config.code_spec" in header
    
    def test_simulate_syndrome_warning(self, runner):
        """Test that syndrome mode reports its warning."""
        payload = _json(runner.invoke(cli, ["simulate", "--qber", "0.01", "--ecc-mode", "syndrome"]))
        
        assert payload["mode_warning"]
        assert payload["ledger"]["pad_bits_spent"] == 0
    
    def test_simulate_rejects_qber_above_half(self, runner):
        """Test that an out-of-range QBER exits with a usage error."""
        result = runner.invoke(cli, ["simulate", "--qber", "0.7"])
        
        assert result.exit_code == 2
        assert "VALIDATION_ERROR" in result.stderr
    
    def test_simulate_joint_attack(self, runner):
        """Test that a joint attack exits with a domain error."""
        result = runner.invoke(cli, ["simulate", "--qber", "0.01", "--attack", "joint"])
        
        assert result.exit_code == 3
        assert "UNSUPPORTED_ATTACK" in result.stderr
    
    def test_simulate_unknown_code(self, runner):
        """Test that an unknown code in the protocol configuration is a usage error."""
        result = runner.invoke(cli, ["simulate", "--qber", "0.01", "--code", "golay"])
        
        assert result.exit_code == 2
        assert "VALIDATION_ERROR" in result.stderr
    
    def test_unknown_flag(self, runner):
        """Test that an unknown flag is a usage error."""
        result = runner.invoke(cli, ["simulate", "--qber", "0.01", "--bogus"])
        
        assert result.exit_code == 2
    
    def test_sweep(self, runner):
        """Test a 2 x 2 grid in qber-major order."""
        rows = _json(runner.invoke(cli, [
            "sweep", "--qber", "0.0", "--qber", "0.02", "--code", "hamming74", "--code", "ideal", "--raw-len", "2048",
        ]))
        
        assert [(row["configured_qber"], row["config"]["code_spec"]) for row in rows] == [
            (0.0, "hamming74"), (0.0, "ideal"), (0.02, "hamming74"), (0.02, "ideal"),
        ]
