#pragma once

#include "rotaxis/axis_vectors.hpp"
#include "rotaxis/cofactor_kernel.hpp"
#include "rotaxis/error.hpp"
#include "rotaxis/extract.hpp"
#include "rotaxis/finite_field.hpp"
#include "rotaxis/linalg.hpp"
#include "rotaxis/random.hpp"
#include "rotaxis/representations.hpp"
#include "rotaxis/resolvent.hpp"
#include "rotaxis/su3.hpp"
