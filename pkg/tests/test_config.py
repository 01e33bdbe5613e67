"""Configuration parsing and merge semantics."""

import pytest

from incevolkov.config import RunConfig, load_config, parse_config_text
from incevolkov.constants import ELECTRON_MASS, PROTON_MASS
from incevolkov.errors import InputError
from incevolkov.families import FamilyKind, parse_family_kind


class TestFamilyAliases:
    @pytest.mark.parametrize("name,kind", [
        ("dirac", FamilyKind.DIRAC_PLUS),
        ("dirac+", FamilyKind.DIRAC_PLUS),
        ("dirac-plus", FamilyKind.DIRAC_PLUS),
        ("dirac-", FamilyKind.DIRAC_MINUS),
        ("DIRAC-MINUS", FamilyKind.DIRAC_MINUS),
        (" kg-cos-even ", FamilyKind.KG_COS_EVEN),
        ("kg-sin-odd", FamilyKind.KG_SIN_ODD),
    ])
    def test_aliases(self, name, kind):
        assert parse_family_kind(name) is kind

    def test_unknown(self):
        with pytest.raises(InputError):
            parse_family_kind("weyl")


class TestParse:
    def test_values_and_comments(self):
        values = parse_config_text(
            "# comment\n"
            "\n"
            "laser.photon_energy_ev = 1.563\n"
            "k_select = 1, 3,5\n"
            "seed = 0x1CE\n")
        assert values["photon_energy_ev"] == 1.563
        assert values["k_select"] == (1, 3, 5)
        assert values["seed"] == 462

    def test_missing_equals(self):
        with pytest.raises(InputError):
            parse_config_text("family dirac\n")

    def test_bad_number(self):
        with pytest.raises(InputError):
            parse_config_text("n = twenty\n")


class TestRunConfig:
    def test_particle_masses(self):
        assert RunConfig(particle="electron").particle_mass_kg == ELECTRON_MASS
        assert RunConfig(particle="proton").particle_mass_kg == PROTON_MASS
        with pytest.raises(InputError):
            RunConfig(particle="muon")

    def test_proton_changes_mu0_not_a(self):
        base = dict(photon_energy_ev=1.563, intensity_w_cm2=1e8,
                    plasma_energy_ev=1.0)
        d_e = RunConfig(**base, particle="electron").wave_config().derived()
        d_p = RunConfig(**base, particle="proton").wave_config().derived()
        assert d_e.a == d_p.a
        assert d_e.mu0 != d_p.mu0

    def test_bad_format(self):
        with pytest.raises(InputError):
            RunConfig(output_format="yaml")

    def test_resolve_requires_source(self):
        with pytest.raises(InputError):
            RunConfig().resolve_a()

    def test_negative_override(self):
        with pytest.raises(InputError):
            RunConfig(a_override=-1.0).resolve_a()

    def test_flags_win(self, tmp_path):
        cfg_file = tmp_path / "c.cfg"
        cfg_file.write_text("n = 5\nseed = 1\n")
        cfg = load_config(str(cfg_file), {"n": 9, "seed": None})
        assert cfg.n == 9
        assert cfg.seed == 1
