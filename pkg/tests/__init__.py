# bures-gpca tests
