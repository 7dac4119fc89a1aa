#pragma once

#include "udiag/assembler.hpp"
#include "udiag/config.hpp"
#include "udiag/demos.hpp"
#include "udiag/diagonal.hpp"
#include "udiag/godel.hpp"
#include "udiag/io.hpp"
#include "udiag/presentation.hpp"
#include "udiag/ram.hpp"
#include "udiag/structure.hpp"
