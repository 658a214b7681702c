#pragma once

#include "error.hpp"
#include "rational.hpp"
#include "laurent.hpp"
#include "masks.hpp"
#include "extension.hpp"
#include "demos.hpp"
#include "render.hpp"
#include "io.hpp"
#include "cli.hpp"
