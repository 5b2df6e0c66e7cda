#pragma once

// Everything except the JSON views (serialize.hpp needs nlohmann/json).

#include "apfree.hpp"
#include "constructions.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "graph_io.hpp"
#include "k2.hpp"
#include "search.hpp"
#include "verifiers.hpp"
