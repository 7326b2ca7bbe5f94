#pragma once

#include "jwt/core.hpp"
#include "jwt/mmalg.hpp"
#include "jwt/perron.hpp"
#include "jwt/tower.hpp"
#include "jwt/fourier.hpp"
#include "jwt/harmonic.hpp"
#include "jwt/entropy.hpp"
#include "jwt/config.hpp"
#include "jwt/suites.hpp"
#include "jwt/report.hpp"
