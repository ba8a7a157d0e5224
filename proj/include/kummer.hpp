#ifndef KUMMER_HPP
#define KUMMER_HPP

#include "kummer/chf_core.hpp"
#include "kummer/cubic.hpp"
#include "kummer/double_double.hpp"
#include "kummer/error.hpp"
#include "kummer/experiments.hpp"
#include "kummer/log_gamma.hpp"
#include "kummer/poisson_beta.hpp"
#include "kummer/reference_oracle.hpp"
#include "kummer/roi_solver.hpp"
#include "kummer/series_engine.hpp"
#include "kummer/signed_log.hpp"

#endif  // KUMMER_HPP
