#pragma once

#include "error.hpp"
#include "explorer.hpp"
#include "fingerprint.hpp"
#include "io.hpp"
#include "mutation.hpp"
#include "qring.hpp"
#include "seeds.hpp"
#include "torus.hpp"
