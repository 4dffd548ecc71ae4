# tests/test_strip/test_config.py
"""
Test configuration loading and overrides
"""
import pytest
import yaml

class TestDefaults:
    """Test default configuration values"""

    def test_default_sections(self):
        """Test that every section is populated"""
        from painleve_strip.config import StripConfig

        config = StripConfig()
        assert config.solver.n_quad == 64
        assert config.solver.tol_res == 1e-8
        assert config.spheroidal.n_modes == 24
        assert config.output.format == "csv"
        assert config.output.precision == 17
        assert config.logging.level == "INFO"

    def test_tolerance_for(self):
        """Test the looser residual tolerance beyond the large-θ threshold"""
        from painleve_strip.config import SolverConfig

        cfg = SolverConfig()
        assert cfg.tolerance_for(1.0) == cfg.tol_res
        assert cfg.tolerance_for(5.0) == cfg.tol_res_large_theta

    def test_quadrature_order(self):
        """Test node counts growing with θ"""
        from painleve_strip.config import SolverConfig

        cfg = SolverConfig()
        assert cfg.quadrature_order(1.0) == 64
        assert cfg.quadrature_order(4.0) == 96
        assert cfg.quadrature_order(10.0) == 192

    def test_anchor_for(self):
        """Test the anchor point per sign of ν"""
        from painleve_strip.config import PainleveConfig

        cfg = PainleveConfig()
        assert cfg.anchor_for(0.25) == 1e-3
        assert cfg.anchor_for(-0.25) == 1e-4

class TestConfigManager:
    """Test the configuration manager"""

    def test_load_yaml(self, tmp_path, sample_config_data):
        """Test loading a partial YAML file"""
        from painleve_strip.config import ConfigManager

        path = tmp_path / "strip.yaml"
        path.write_text(yaml.safe_dump(sample_config_data))
        config = ConfigManager(str(path)).config
        assert config.solver.n_quad == 80
        assert config.solver.tol_res == 1e-9
        assert config.solver.split_order == 4
        assert config.spheroidal.n_modes == 16
        assert config.output.format == "json"

    def test_unknown_key(self, tmp_path):
        """Test ConfigurationError for a misspelled key"""
        from painleve_strip.config import ConfigManager
        from painleve_strip.exceptions import ConfigurationError

        path = tmp_path / "strip.yaml"
        path.write_text(yaml.safe_dump({"solver": {"nquad": 10}}))
        with pytest.raises(ConfigurationError):
            ConfigManager(str(path))

    def test_missing_file(self, tmp_path):
        """Test ConfigurationError for an explicit path that does not exist"""
        from painleve_strip.config import ConfigManager
        from painleve_strip.exceptions import ConfigurationError

        with pytest.raises(ConfigurationError):
            ConfigManager(str(tmp_path / "absent.yaml"))

    def test_env_override(self, monkeypatch):
        """Test environment variables"""
        from painleve_strip.config import ConfigManager

        monkeypatch.setenv("PAINLEVE_STRIP_N_QUAD", "128")
        monkeypatch.setenv("PAINLEVE_STRIP_LOG_LEVEL", "DEBUG")
        manager = ConfigManager()
        manager.update_from_env()
        assert manager.config.solver.n_quad == 128
        assert manager.config.logging.level == "DEBUG"

    def test_save_and_reload(self, tmp_path):
        """Test that a saved configuration loads back"""
        from painleve_strip.config import ConfigManager, StripConfig

        config = StripConfig()
        config.painleve.bvp_tol = 1e-10
        path = tmp_path / "saved.yaml"
        ConfigManager.from_config(config).save_config(str(path))
        assert ConfigManager(str(path)).config.painleve.bvp_tol == 1e-10

    def test_global_config(self):
        """Test set_config and reset_config"""
        from painleve_strip.config import ConfigManager, StripConfig, get_config, reset_config, set_config

        config = StripConfig()
        config.solver.n_quad = 200
        set_config(ConfigManager.from_config(config))
        assert get_config().solver.n_quad == 200
        reset_config()
        assert get_config() is not config
