#pragma once

// Umbrella header.

#include "bergman/error.hpp"
#include "bergman/log_real.hpp"
#include "bergman/root_finding.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/weight.hpp"
#include "bergman/coeff_seq.hpp"
#include "bergman/lacunary.hpp"
#include "bergman/norms.hpp"
#include "bergman/hull.hpp"
#include "bergman/parallel.hpp"
#include "bergman/corpus.hpp"
#include "bergman/harness.hpp"
#include "bergman/report.hpp"
#include "bergman/json_io.hpp"
#include "bergman/checks.hpp"
