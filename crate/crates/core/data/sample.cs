c1:(p -> (q -> p))
c2:c1:(p -> (q -> p))
c1:(Kp -> p)
