"""Per-point status bits shared by the compiled and pure kernels."""

FLAG_OK = 0
FLAG_NDD_POLE = 1      # local-field map pole; chi_p valid, chi_ndd absent
FLAG_DENOM_POLE = 2    # closed-form denominator pole; no chi at all
FLAG_NONLINEAR = 4     # probe-linearity diagnostic failed (value still valid)
FLAG_SOLVER = 8        # steady-state solve failed its residual check
