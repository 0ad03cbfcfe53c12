"""Shared pytest hooks: a one-line-per-criterion acceptance summary."""

CRITERIA = {
    "test_c01_no_identical_resonance":
        "no identical resonance at orders h^0..h^2 for n = 1..22 (< 60 s)",
    "test_c02_pythagorean_worst_cases":
        "Pythagorean worst-case tuples exact",
    "test_c03_tree_census":
        "portrait counts d = 2..16 and enumeration d = 2..12 (< 30 s)",
    "test_c04_branch_correctness":
        "branch residual < 1e-9, lambda above onset, quadratic approach",
    "test_c05_spectral_agreement":
        "Galerkin vs closed form 1e-10, h^3 defect decay, Morse index n",
    "test_c06_scalar_ode_closed_forms":
        "-tanh to 1e-8, pole inside pi/2 window, period-pi return < 1e-7",
    "test_c07_blowup_heteroclinic_dichotomy":
        "monotone heteroclinic vs finite-time blow-up from W_1(0.1)",
    "test_c08_schrodinger_structure":
        "reversibility < 1e-7 and monochromatic 1/(2 pi) return < 1e-6",
    "test_c09_cyclotomic_portraits":
        "d = 3 Morse path portrait, d = 4 non-Morse with two centers",
    "test_c10_traveling_waves":
        "standing wave parameters, resonant speeds, soliton residual < 1e-11",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    status = {}
    for outcome, label in (("passed", "PASS"), ("failed", "FAIL"),
                           ("error", "FAIL"), ("skipped", "SKIP")):
        for report in terminalreporter.stats.get(outcome, []):
            name = report.nodeid.split("::")[-1].split("[")[0]
            if name in CRITERIA and status.get(name) != "FAIL":
                status[name] = label
    if not status:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name in sorted(CRITERIA):
        if name in status:
            cid = name.split("_")[1]
            terminalreporter.write_line(
                f"{cid} {status[name]:4s} {CRITERIA[name]}")
