#ifndef QCOH_QCOH_HPP_
#define QCOH_QCOH_HPP_

#include "error.hpp"
#include "quandle.hpp"
#include "text_io.hpp"
#include "word.hpp"
#include "todd_coxeter.hpp"
#include "subgroup.hpp"
#include "abelian.hpp"
#include "cocycle.hpp"
#include "engine.hpp"
#include "smith.hpp"
#include "homology.hpp"
#include "affine.hpp"
#include "catalog.hpp"

#endif
