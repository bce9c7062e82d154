#pragma once

#include "evim/category.hpp"
#include "evim/core.hpp"
#include "evim/error.hpp"
#include "evim/fdvect.hpp"
#include "evim/finmet.hpp"
#include "evim/finposet.hpp"
#include "evim/finset.hpp"
#include "evim/matrix.hpp"
#include "evim/poly.hpp"
#include "evim/rational.hpp"
#include "evim/verdict.hpp"
