#ifndef ALUTHGE_ALUTHGE_HPP
#define ALUTHGE_ALUTHGE_HPP

#include "aluthge/linalg_core.hpp"
#include "aluthge/polar_aluthge.hpp"
#include "aluthge/commutant.hpp"
#include "aluthge/schatten.hpp"
#include "aluthge/random.hpp"
#include "aluthge/generators.hpp"
#include "aluthge/matrix_io.hpp"
#include "aluthge/suites.hpp"

#endif  // ALUTHGE_ALUTHGE_HPP
