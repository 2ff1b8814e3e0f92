"""HTTP service: endpoint behavior, error codes, CLI parity."""

import json
import urllib.error
import urllib.request

import pytest

from priorrank import density, quantile
from priorrank.service import start_background

from test_cli import ELICITED, SIGMA1, equivalent_dataset


@pytest.fixture(scope="module")
def base_url():
    server, thread = start_background(port=0)
    port = server.server_address[1]
    yield f"http://127.0.0.1:{port}"
    server.shutdown()
    server.server_close()


def call(base_url, path, body=None, method=None):
    url = base_url + path
    if body is None:
        req = urllib.request.Request(url, method=method or "GET")
    else:
        req = urllib.request.Request(
            url,
            data=json.dumps(body).encode(),
            headers={"Content-Type": "application/json"},
            method=method or "POST",
        )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


def expert_entries():
    return [
        {
            "id": eid,
            "label": label,
            "family": "skew_normal",
            "parameters": {"mean": m, "sd": s, "shape": g},
        }
        for eid, label, m, s, g in ELICITED
    ]


class TestHealth:
    def test_health(self, base_url):
        status, body = call(base_url, "/api/health")
        assert status == 200
        assert body["status"] == "ok" and "version" in body

    def test_unknown_endpoint_404(self, base_url):
        status, body = call(base_url, "/api/nothing", body={})
        assert status == 404


class TestDensity:
    def test_standard_normal_peak(self, base_url):
        status, body = call(
            base_url,
            "/api/density",
            {"spec": {"family": "normal", "parameters": {"mean": 0, "sd": 1}}, "xs": [0.0]},
        )
        assert status == 200
        assert body["densities"][0] == pytest.approx(0.3989423, abs=1e-7)

    def test_matches_library(self, base_url):
        spec = {"family": "skew_normal", "parameters": {"location": 1.0, "scale": 0.5, "shape": 0.7}}
        xs = [0.0, 0.5, 1.0, 1.5]
        status, body = call(base_url, "/api/density", {"spec": spec, "xs": xs})
        assert status == 200
        from priorrank import SkewNormal

        expected = [float(density(SkewNormal(1.0, 0.5, 0.7), x)) for x in xs]
        assert body["densities"] == expected

    def test_missing_field_400(self, base_url):
        status, body = call(base_url, "/api/density", {"xs": [0]})
        assert status == 400
        assert body["error"]["field"] == "spec"

    def test_bad_family_400(self, base_url):
        status, body = call(
            base_url,
            "/api/density",
            {"spec": {"family": "beta", "parameters": {}}, "xs": [0]},
        )
        assert status == 400

    def test_malformed_json_400(self, base_url):
        req = urllib.request.Request(
            base_url + "/api/density", data=b"{oops", method="POST"
        )
        try:
            urllib.request.urlopen(req)
            raise AssertionError("expected 400")
        except urllib.error.HTTPError as err:
            assert err.code == 400


class TestQuantiles:
    def test_matches_library(self, base_url):
        spec = {"family": "skew_normal", "parameters": {"mean": 2.15, "sd": 0.09, "shape": 0.78}}
        ps = [0.05, 0.5, 0.95]
        status, body = call(base_url, "/api/quantiles", {"spec": spec, "ps": ps})
        assert status == 200
        from priorrank import skew_normal_from_mean_sd

        expected = [quantile(skew_normal_from_mean_sd(2.15, 0.09, 0.78), p) for p in ps]
        assert body["xs"] == expected

    def test_out_of_range_p_400(self, base_url):
        spec = {"family": "normal", "parameters": {"mean": 0, "sd": 1}}
        status, body = call(base_url, "/api/quantiles", {"spec": spec, "ps": [1.5]})
        assert status == 400
        assert body["error"]["field"] == "ps"


class TestKl:
    def test_worked_pair(self, base_url):
        status, body = call(
            base_url,
            "/api/kl",
            {
                "p": {"family": "normal", "parameters": {"mean": 0, "sd": 1}},
                "q": {"family": "normal", "parameters": {"mean": 0.5, "sd": 1}},
            },
        )
        assert status == 200
        assert body["value"] == pytest.approx(0.125, abs=1e-6)
        assert not body["infinite"]

    def test_infinite_serialized_as_null(self, base_url):
        status, body = call(
            base_url,
            "/api/kl",
            {
                "p": {"family": "normal", "parameters": {"mean": 0, "sd": 1}},
                "q": {"family": "uniform", "parameters": {"lower": 5, "upper": 6}},
            },
        )
        assert status == 200
        assert body["value"] is None and body["infinite"]


class TestRank:
    def test_with_posterior_matches_expected_ranks(self, base_url):
        status, body = call(
            base_url,
            "/api/rank",
            {
                "posterior": {"mean": 2.29, "sd": SIGMA1},
                "benchmark": {"family": "uniform", "parameters": {"lower": 0, "upper": 5}},
                "experts": expert_entries(),
            },
        )
        assert status == 200
        ranks = {e["expert_id"]: e["rank"] for e in body["entries"]}
        assert ranks == {"e1": 2, "e2": 3, "e3": 4, "e4": 1}
        assert body["benchmark_kl"] == pytest.approx(2.55, abs=1e-6)
        assert "uninformative: yes" in body["stability_note"]

    def test_with_observations_parity_with_cli(self, base_url, tmp_path, capsys):
        data = equivalent_dataset()
        status, body = call(
            base_url,
            "/api/rank",
            {
                "observations": list(data.observations),
                "benchmark": {"family": "uniform", "parameters": {"lower": 0, "upper": 5}},
                "experts": expert_entries(),
            },
        )
        assert status == 200

        from priorrank.cli import main
        from priorrank.documents import save_data_csv, save_prior_set
        from priorrank.ranking import ExpertPrior
        from priorrank.distributions import skew_normal_from_mean_sd

        data_path = tmp_path / "data.csv"
        priors_path = tmp_path / "priors.json"
        out_path = tmp_path / "report.json"
        save_data_csv(str(data_path), data)
        save_prior_set(
            str(priors_path),
            [
                ExpertPrior(eid, label, skew_normal_from_mean_sd(m, s, g))
                for eid, label, m, s, g in ELICITED
            ],
        )
        assert (
            main(
                [
                    "rank",
                    "--data", str(data_path),
                    "--priors", str(priors_path),
                    "--benchmark", "uniform:0,5",
                    "--out", str(out_path),
                ]
            )
            == 0
        )
        capsys.readouterr()
        cli_doc = json.loads(out_path.read_text())
        service_entries = {e["expert_id"]: e for e in body["entries"]}
        cli_entries = {e["expert_id"]: e for e in cli_doc["entries"]}
        assert service_entries.keys() == cli_entries.keys()
        for key in cli_entries:
            assert service_entries[key]["kl"] == cli_entries[key]["kl"]
            assert service_entries[key]["dac"] == cli_entries[key]["dac"]
            assert service_entries[key]["rank"] == cli_entries[key]["rank"]
        assert body["benchmark_kl"] == cli_doc["benchmark_kl"]

    def test_undefined_ratio_is_422(self, base_url):
        status, body = call(
            base_url,
            "/api/rank",
            {
                "posterior": {"mean": 0.0, "sd": 1.0},
                "benchmark": {"family": "normal", "parameters": {"mean": 0, "sd": 1}},
                "experts": [
                    {
                        "id": "a",
                        "label": "a",
                        "family": "normal",
                        "parameters": {"mean": 1, "sd": 1},
                    }
                ],
            },
        )
        assert status == 422
        assert "undefined" in body["error"]["message"]

    def test_missing_inputs_400(self, base_url):
        status, body = call(
            base_url,
            "/api/rank",
            {
                "benchmark": {"family": "uniform", "parameters": {"lower": 0, "upper": 5}},
                "experts": expert_entries(),
            },
        )
        assert status == 400
        assert body["error"]["field"] == "observations"

    def test_mcmc_method_with_seed(self, base_url):
        data = equivalent_dataset(seed=55)
        request = {
            "observations": list(data.observations),
            "benchmark": {"family": "uniform", "parameters": {"lower": 0, "upper": 5}},
            "experts": expert_entries(),
            "method": "mcmc",
            "seed": 11,
        }
        status1, body1 = call(base_url, "/api/rank", request)
        status2, body2 = call(base_url, "/api/rank", request)
        assert status1 == status2 == 200
        assert body1 == body2  # stateless and seed-deterministic
        assert body1["posterior"]["method"] == "mcmc"
        assert body1["posterior"]["diagnostics"]["r_hat"] < 1.05


class TestCors:
    def test_preflight(self, base_url):
        req = urllib.request.Request(base_url + "/api/kl", method="OPTIONS")
        with urllib.request.urlopen(req) as resp:
            assert resp.status == 204
            assert resp.headers["Access-Control-Allow-Origin"] == "*"
