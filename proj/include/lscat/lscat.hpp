#pragma once

#include "lscat/field.hpp"
#include "lscat/matrix.hpp"
#include "lscat/simplicial.hpp"
#include "lscat/algebra.hpp"
#include "lscat/cohomology.hpp"
#include "lscat/induced.hpp"
#include "lscat/kunneth.hpp"
#include "lscat/bounds.hpp"
#include "lscat/propagation.hpp"
#include "lscat/attach.hpp"
#include "lscat/io.hpp"
