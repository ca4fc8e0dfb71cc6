from liebra.verify import SUITES, SuiteResult, run_suites, suite_orders, suite_poisson


def test_suite_result_caps_reproducers():
    r = SuiteResult("x")
    for i in range(30):
        r.check(False, f"case {i}")
    assert r.failure_count == 30 and len(r.failures) == 20 and not r.ok
    assert r.summary().startswith("FAIL x")


def test_orders_suite():
    assert suite_orders(max_n=3).ok


def test_poisson_suite():
    assert suite_poisson(n=3, sampled_n=3, samples=50).ok


def test_run_suites_scaled_down():
    results = run_suites(list(SUITES), max_n=3, samples=200, threads=2)
    assert [r.ok for r in results] == [True] * len(SUITES)
