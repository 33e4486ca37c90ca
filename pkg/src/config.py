from dotenv import load_dotenv
import os

load_dotenv()

# == Configuration Variables ==
LOG_LEVEL = os.getenv("POROLAB_LOG_LEVEL", "INFO")
OUTPUT_DIR = os.getenv("POROLAB_OUTPUT_DIR", "./out")

# == Numerical defaults ==
DEFAULT_TOL = 1e-10  # quadrature / ODE integrator tolerance
RESTRICTION_TOL = 1e-12  # γ-restriction and κ=0 equality tests
SINGULAR_MARGIN = 1e-6  # distance kept from x = -x0 singular loci
SCHEMA_VERSION = 1
