#pragma once

#include "forge/codes.hpp"
#include "forge/field.hpp"
#include "forge/gcd.hpp"
#include "forge/groebner.hpp"
#include "forge/matrix.hpp"
#include "forge/monomial.hpp"
#include "forge/nodal.hpp"
#include "forge/poly.hpp"
#include "forge/poly_matrix.hpp"
#include "forge/report.hpp"
#include "forge/rng.hpp"
#include "forge/tensor334.hpp"
#include "forge/tensor_json.hpp"
#include "forge/upoly.hpp"
