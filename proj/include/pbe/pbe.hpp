/**
 * @file pbe.hpp
 * @brief Umbrella header.
 */
#pragma once

#include "pbe/core.hpp"
#include "pbe/preferences.hpp"
#include "pbe/shortlisting.hpp"
#include "pbe/allocation.hpp"
#include "pbe/verification.hpp"
#include "pbe/strategy.hpp"
#include "pbe/suite.hpp"
#include "pbe/scenario.hpp"
#include "pbe/fixtures.hpp"
#include "pbe/commands.hpp"
