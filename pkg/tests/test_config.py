import json
import math

import pytest

from maglap.core.config import DEFAULT_TOLERANCES, SUPPORTED_COMMANDS
from maglap.core.exceptions import ConfigurationError
from maglap.core.file_utils import load_config_file, write_resolved_config
from maglap.fem.field import Gauge
from maglap.harness.config import DomainSpec, ExperimentConfig, default_config, parse_tolerance_overrides


@pytest.mark.parametrize("command", SUPPORTED_COMMANDS)
def test_defaults_are_valid(command):
    config = default_config(command).validate()
    assert config.command == command
    assert config.tolerances == DEFAULT_TOLERANCES


def test_unknown_command():
    with pytest.raises(ConfigurationError):
        default_config("plot")


class TestDomainSpec:
    def test_derived_names(self):
        assert DomainSpec("regular", {"n": 5}).name == "regular5"
        assert DomainSpec("circumscribed", {"n": 16}).name == "P16"
        assert DomainSpec("random", {"n_vertices": 6}, seed=2).name == "random6_s2"
        assert DomainSpec("square", label="unit").name == "unit"

    def test_build(self):
        assert DomainSpec("square").build().area == pytest.approx(1.0)
        assert DomainSpec("rectangle", {"x0": 0, "y0": 0, "x1": 2, "y1": 1}).build().area == pytest.approx(2.0)
        assert DomainSpec("random", {"n_vertices": 5}, seed=1).build().n_vertices == 5

    @pytest.mark.parametrize("spec", [
        DomainSpec("disk"),
        DomainSpec("regular"),
        DomainSpec("regular", {"n": 2}),
        DomainSpec("random", {"n_vertices": 5}),
    ])
    def test_build_errors(self, spec):
        with pytest.raises(ConfigurationError):
            spec.build()

    def test_unknown_kind(self):
        with pytest.raises(ConfigurationError):
            DomainSpec("ellipse")

    def test_reseeded(self):
        spec = DomainSpec("random", {"n_vertices": 6}, seed=1)
        assert spec.reseeded(10).seed == 11
        assert DomainSpec("square").reseeded(10).seed is None

    def test_mapping_round_trip(self):
        spec = DomainSpec("regular", {"n": 6, "radius": 2.0}, label="hex")
        assert DomainSpec.from_mapping(spec.to_mapping()) == spec
        assert DomainSpec.from_mapping("disk").is_disk

    @pytest.mark.parametrize("data", [{"params": {}}, {"kind": "square", "colour": "red"}, 5])
    def test_bad_mappings(self, data):
        with pytest.raises(ConfigurationError):
            DomainSpec.from_mapping(data)


class TestExperimentConfig:
    def test_file_values_overlay_defaults(self):
        config = ExperimentConfig.from_mapping(
            "polygon-sweep",
            {"b_values": [3.0], "gauge": "symmetric", "tolerances": {"gauge": 0.1}, "domains": ["square"]},
        )
        assert config.b_values == [3.0]
        assert config.gauge is Gauge.SYMMETRIC
        assert config.tol("gauge") == 0.1
        assert config.tol("identity") == DEFAULT_TOLERANCES["identity"]
        assert [domain.name for domain in config.domains] == ["square"]
        assert config.k_max == default_config("polygon-sweep").k_max

    @pytest.mark.parametrize("data", [
        {"unknown_key": 1},
        {"command": "counting"},
        {"gauge": "coulomb"},
        {"tolerances": {"nonsense": 1.0}},
        {"tolerances": {"gauge": -1.0}},
        {"b_values": [0.0]},
        {"b_values": []},
        {"k_max": 0},
        {"refine_levels": [4, 3]},
        {"refine_levels": [-1]},
        {"q_values": [-1]},
        {"lengths": [0.0]},
        {"fiber_grid": 150},
        {"eigen_method": "lanczos"},
        {"seed": -3},
    ])
    def test_invalid_values(self, data):
        with pytest.raises(ConfigurationError):
            ExperimentConfig.from_mapping("polygon-sweep", data)

    def test_refinement_levels(self):
        config = default_config("polygon-sweep").with_overrides(refine_levels=[2, 5])
        assert (config.reference_refine, config.tested_refine) == (2, 5)
        single = config.with_overrides(refine_levels=[3])
        assert (single.reference_refine, single.tested_refine) == (2, 3)
        assert config.with_overrides(refine_levels=[0]).reference_refine == 0

    def test_overrides_ignore_none(self):
        config = default_config("counting")
        assert config.with_overrides(seed=None, out_dir=None).to_mapping() == config.to_mapping()

    def test_resolved_domains_offset_seeds(self):
        config = default_config("polygon-sweep").with_overrides(seed=100)
        seeds = [domain.seed for domain in config.resolved_domains() if domain.kind == "random"]
        assert seeds == [100, 101, 102]

    def test_unknown_tolerance_name(self):
        with pytest.raises(ConfigurationError):
            default_config("counting").tol("bogus")

    def test_resolved_config_file_round_trip(self, tmp_path):
        config = default_config("cylinder")
        path = write_resolved_config(tmp_path, "cylinder", config.to_mapping())
        data = load_config_file(str(path))
        assert data["lengths"] == pytest.approx([math.pi, 2.0])
        assert ExperimentConfig.from_mapping("cylinder", data).to_mapping() == config.to_mapping()

    def test_config_file_errors(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_config_file(str(bad))
        listing = tmp_path / "list.json"
        listing.write_text(json.dumps([1, 2]), encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_config_file(str(listing))
        with pytest.raises(ConfigurationError):
            load_config_file(str(tmp_path / "missing.json"))


class TestToleranceOverrides:
    def test_parses_values(self):
        assert parse_tolerance_overrides(["gauge=0.1", "identity = 1e-5"]) == {"gauge": 0.1, "identity": 1e-5}

    @pytest.mark.parametrize("item", ["gauge", "=0.1", "bogus=1", "gauge=abc"])
    def test_rejects_malformed_items(self, item):
        with pytest.raises(ConfigurationError):
            parse_tolerance_overrides([item])
