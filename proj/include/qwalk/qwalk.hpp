#pragma once

#include "qwalk/analyze.hpp"
#include "qwalk/core.hpp"
#include "qwalk/decompose.hpp"
#include "qwalk/gates.hpp"
#include "qwalk/io.hpp"
#include "qwalk/matrix.hpp"
#include "qwalk/resources.hpp"
#include "qwalk/simulate.hpp"
#include "qwalk/walk.hpp"
