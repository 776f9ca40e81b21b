#pragma once

#include "framekit/linalg.hpp"
#include "framekit/frame.hpp"
#include "framekit/subspace.hpp"
#include "framekit/potential.hpp"
#include "framekit/matrix_io.hpp"
