#pragma once

#include "field.hpp"
#include "matrix.hpp"
#include "monomial.hpp"
#include "polynomial.hpp"
#include "groebner.hpp"
#include "module.hpp"
#include "resolution.hpp"
#include "arrangement.hpp"
#include "cohomology.hpp"
#include "io.hpp"
#include "report.hpp"
