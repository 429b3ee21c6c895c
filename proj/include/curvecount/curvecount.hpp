#pragma once

#include "numtheory.hpp"
#include "pants.hpp"
#include "gluing.hpp"
#include "lengths.hpp"
#include "count_table.hpp"
#include "closing.hpp"
#include "counting.hpp"
#include "torus.hpp"
