#ifndef TWOBRIDGE_TWOBRIDGE_HPP
#define TWOBRIDGE_TWOBRIDGE_HPP

#include "words.hpp"
#include "diagram.hpp"
#include "sigtables.hpp"
#include "cobordism.hpp"
#include "markov.hpp"
#include "io.hpp"

#endif
