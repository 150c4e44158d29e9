#pragma once

// Umbrella header: the whole library.
#include "steinerlab/errors.hpp"
#include "steinerlab/vec.hpp"
#include "steinerlab/frame.hpp"
#include "steinerlab/grid.hpp"
#include "steinerlab/polygon.hpp"
#include "steinerlab/body.hpp"
#include "steinerlab/geometry.hpp"
#include "steinerlab/graph.hpp"
#include "steinerlab/chord.hpp"
#include "steinerlab/parallel.hpp"
#include "steinerlab/fiber.hpp"
#include "steinerlab/functionals.hpp"
#include "steinerlab/random.hpp"
#include "steinerlab/io_json.hpp"
#include "steinerlab/svg.hpp"
#include "steinerlab/verify.hpp"
