from modelock.identities import IDENTITY_TOL, verify_shrink


def check(data):
    report = verify_shrink(data)
    bad = {k: v for k, v in report.items() if v > IDENTITY_TOL}
    assert not bad, f"identities out of tolerance: {bad}"
    return report


def test_identities_bcnf3(bcnf3_sp):
    report = check(bcnf3_sp.data)
    # the suite covers the eigenvector transports, both inverse-c forms,
    # the determinant-ratio identity and the sign pattern
    assert "inv_c_form1" in report and "inv_c_form2" in report
    assert "a_over_b" in report
    assert "t_sign_pattern" in report and "ab_negative" in report


def test_identities_ns2(ns2_sp):
    check(ns2_sp.data)


def test_identities_gs2(gs2_sp):
    check(gs2_sp.data)
