#pragma once

#include "lorentz/certificate.hpp"
#include "lorentz/cone.hpp"
#include "lorentz/decide.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/geometry.hpp"
#include "lorentz/oracle.hpp"
#include "lorentz/semipositivity.hpp"
#include "lorentz/tolerances.hpp"
