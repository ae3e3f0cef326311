#pragma once

#include "morawetz/analysis.hpp"
#include "morawetz/assembly.hpp"
#include "morawetz/basis.hpp"
#include "morawetz/errors.hpp"
#include "morawetz/field.hpp"
#include "morawetz/geometry.hpp"
#include "morawetz/identities.hpp"
#include "morawetz/jet.hpp"
#include "morawetz/linalg.hpp"
#include "morawetz/operators.hpp"
#include "morawetz/parallel.hpp"
#include "morawetz/problems.hpp"
#include "morawetz/quadrature.hpp"
