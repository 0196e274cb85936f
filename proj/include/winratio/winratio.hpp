#pragma once

#include "winratio/analysis.hpp"
#include "winratio/comparison.hpp"
#include "winratio/distributions.hpp"
#include "winratio/errors.hpp"
#include "winratio/loop_space.hpp"
#include "winratio/tournament.hpp"
#include "winratio/trial_io.hpp"
