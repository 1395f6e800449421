#pragma once

#include "error.hpp"
#include "goldbach.hpp"
#include "lambda_lab.hpp"
#include "parallel.hpp"
#include "prime_table.hpp"
#include "rational.hpp"
#include "semigroup.hpp"
#include "wilf.hpp"
