_ACCEPTANCE_LABELS = {
    "test_ac1_two_block_hosts": "AC-1 two-block extremal hosts",
    "test_ac2_dense_fallback": "AC-2 dense two-subdivision fallback",
    "test_ac3_oracle_equivalence": "AC-3 oracle equivalence on 200 tiny hosts",
    "test_ac4_expander_contracts": "AC-4 extraction contracts and verifier agreement",
    "test_ac5_drc_guarantee": "AC-5 dependent random choice guarantee",
    "test_ac6_c4_free_route": "AC-6 four-cycle-free route on incidence planes",
    "test_ac7_gadget_round_trip": "AC-7 gadget round-trip and violation detection",
    "test_ac8_formula_regression": "AC-8 formula regression",
    "test_ac9_determinism": "AC-9 byte-identical command output",
}


def pytest_runtest_logreport(report):
    """One checklist line per acceptance criterion."""
    if report.when != "call":
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    label = _ACCEPTANCE_LABELS.get(name)
    if label is not None:
        verdict = "pass" if report.passed else "fail"
        print(f"\n{label}: {verdict}", flush=True)
