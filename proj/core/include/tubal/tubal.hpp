#pragma once

#include "tubal/admm.hpp"
#include "tubal/algebra.hpp"
#include "tubal/altmin.hpp"
#include "tubal/error.hpp"
#include "tubal/experiments.hpp"
#include "tubal/io.hpp"
#include "tubal/parallel.hpp"
#include "tubal/report.hpp"
#include "tubal/sampling.hpp"
#include "tubal/tensor.hpp"
#include "tubal/tls.hpp"
#include "tubal/tsvd.hpp"
