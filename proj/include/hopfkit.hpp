#ifndef HOPFKIT_HPP
#define HOPFKIT_HPP

#include "hopfkit/complex.hpp"
#include "hopfkit/errors.hpp"
#include "hopfkit/estimates.hpp"
#include "hopfkit/families.hpp"
#include "hopfkit/family_builders.hpp"
#include "hopfkit/filling.hpp"
#include "hopfkit/fixtures.hpp"
#include "hopfkit/homology.hpp"
#include "hopfkit/io.hpp"
#include "hopfkit/maps.hpp"
#include "hopfkit/rational.hpp"

#endif
