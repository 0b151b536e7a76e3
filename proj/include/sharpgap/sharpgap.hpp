#pragma once

// C++ umbrella header for the core library.

#include "sharpgap/bounds.hpp"
#include "sharpgap/errors.hpp"
#include "sharpgap/flux.hpp"
#include "sharpgap/model.hpp"
#include "sharpgap/moc_pde.hpp"
#include "sharpgap/specialfn.hpp"
#include "sharpgap/sturm.hpp"
#include "sharpgap/warped.hpp"
