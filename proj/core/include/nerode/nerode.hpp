#pragma once

#include "nerode/engine.hpp"
#include "nerode/errors.hpp"
#include "nerode/linear.hpp"
#include "nerode/rational_matrix.hpp"
#include "nerode/signal.hpp"
#include "nerode/system.hpp"
