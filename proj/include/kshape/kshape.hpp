#ifndef KSHAPE_KSHAPE_HPP
#define KSHAPE_KSHAPE_HPP

#include "kshape/bkernel.hpp"
#include "kshape/generators.hpp"
#include "kshape/geometry.hpp"
#include "kshape/io.hpp"
#include "kshape/landmarks.hpp"
#include "kshape/scene.hpp"
#include "kshape/shape.hpp"
#include "kshape/svg.hpp"
#include "kshape/verify.hpp"

#endif  // KSHAPE_KSHAPE_HPP
