def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: long-running Monte Carlo checks (deselect with -m 'not slow')"
    )
    config.addinivalue_line(
        "markers", "acceptance: the acceptance-criteria gate (runs the full budgets)"
    )
