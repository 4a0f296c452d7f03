#pragma once

// Umbrella header.

#include "toricstab/chow.hpp"
#include "toricstab/cli.hpp"
#include "toricstab/envelope.hpp"
#include "toricstab/io.hpp"
#include "toricstab/lp.hpp"
#include "toricstab/polytope.hpp"
#include "toricstab/relative.hpp"
#include "toricstab/search.hpp"
#include "toricstab/triangulation.hpp"
#include "toricstab/version.hpp"
