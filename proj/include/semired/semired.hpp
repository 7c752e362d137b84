#pragma once

// Convenience header pulling in the whole library.

#include "numbers.hpp"
#include "errors.hpp"
#include "numcore.hpp"
#include "genpoly.hpp"
#include "graph.hpp"
#include "edges.hpp"
#include "transform.hpp"
#include "families.hpp"
#include "dsl.hpp"
